//! Numerical tolerances and memory caps shared by every module.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Every numerical threshold the crate uses, in one place.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Maximum deviation of a normalized pure state's squared norm from 1.
    pub norm: f64,
    /// Maximum absolute entry of `M - M^dagger` for a matrix to count as Hermitian.
    pub hermitian: f64,
    /// Maximum deviation of a density operator's trace from 1.
    pub trace: f64,
    /// Eigenvalues in `[-psd, 0)` are rounding noise and get clamped to zero.
    pub psd: f64,
    /// Eigenvalues of a trace-one operator below this are treated as an exact null space
    /// when forming matrix square roots.
    pub rank_cutoff: f64,
    /// Jacobi stops once the off-diagonal Frobenius norm drops below this (scaled by the
    /// matrix norm when that exceeds one).
    pub jacobi_convergence: f64,
    /// Jacobi sweep budget.
    pub jacobi_max_sweeps: usize,
    /// Concurrence above this counts as entangled; PPT minimum eigenvalue below its
    /// negation counts as NPT.
    pub entanglement: f64,
    /// Allowed slack in `a^2 + (n-1) b^2 = 1` for star pure states.
    pub star_normalization: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        norm: 1e-12,
        hermitian: 1e-12,
        trace: 1e-10,
        psd: 1e-10,
        rank_cutoff: 1e-14,
        jacobi_convergence: 1e-13,
        jacobi_max_sweeps: 100,
        entanglement: 1e-9,
        star_normalization: 1e-10,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// Name of the environment variable that overrides both qubit caps.
pub const MAX_QUBITS_ENV: &str = "ENTMOL_MAX_QUBITS";

/// Qubit caps for dense representations.
///
/// A pure state on `n` qubits stores `2^n` complex doubles, i.e. `16 * 2^n` bytes
/// (256 MiB at the default cap of 24). A dense density operator stores `4^n` complex
/// doubles, i.e. `16 * 4^n` bytes (256 MiB at the default cap of 12).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_pure_qubits: usize,
    pub max_density_qubits: usize,
}

impl Limits {
    pub const DEFAULT: Limits = Limits {
        max_pure_qubits: 24,
        max_density_qubits: 12,
    };

    /// Both caps set to `n`.
    pub fn uniform(n: usize) -> Self {
        Limits {
            max_pure_qubits: n,
            max_density_qubits: n,
        }
    }

    /// Defaults, overridden by `ENTMOL_MAX_QUBITS` when it is set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(MAX_QUBITS_ENV) {
            Ok(raw) => raw
                .trim()
                .parse::<usize>()
                .map(Limits::uniform)
                .map_err(|_| Error::Domain(format!("{MAX_QUBITS_ENV} must be a non-negative integer, got {raw:?}"))),
            Err(_) => Ok(Limits::DEFAULT),
        }
    }

    pub fn check_pure(&self, n_qubits: usize) -> Result<()> {
        if n_qubits > self.max_pure_qubits {
            return Err(Error::Capacity {
                what: "pure state",
                requested: n_qubits,
                cap: self.max_pure_qubits,
            });
        }
        Ok(())
    }

    pub fn check_density(&self, n_qubits: usize) -> Result<()> {
        if n_qubits > self.max_density_qubits {
            return Err(Error::Capacity {
                what: "density operator",
                requested: n_qubits,
                cap: self.max_density_qubits,
            });
        }
        Ok(())
    }
}

impl Default for Limits {
    fn default() -> Self {
        Self::DEFAULT
    }
}
