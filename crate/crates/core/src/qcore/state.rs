use super::eigen::hermitian_eigenvalues;
use super::matrix::{CMatrix, C64, ZERO};
use crate::config::Tolerances;
use crate::error::{Error, Result};

/// Bit mask of qubit `q` (1-based) in an `n`-qubit basis index. Qubit 1 is the most
/// significant bit: `|q1 q2 ... qN>` has index `sum q_i 2^(N-i)`.
#[inline]
pub fn qubit_mask(n_qubits: usize, q: usize) -> usize {
    1 << (n_qubits - q)
}

pub(crate) fn check_qubit(n_qubits: usize, q: usize) -> Result<()> {
    if q == 0 || q > n_qubits {
        return Err(Error::QubitIndex { index: q, n_qubits });
    }
    Ok(())
}

/// Normalized state vector over `n_qubits` qubits (most-significant-bit = qubit 1).
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amplitudes: Vec<C64>,
}

impl PureState {
    /// Validates length and unit norm.
    pub fn new(n_qubits: usize, amplitudes: Vec<C64>) -> Result<Self> {
        let state = Self::with_length(n_qubits, amplitudes)?;
        let deviation = (state.norm_sqr() - 1.0).abs();
        if deviation > Tolerances::DEFAULT.norm {
            return Err(Error::InvalidState(format!(
                "squared norm deviates from 1 by {deviation:e}"
            )));
        }
        Ok(state)
    }

    /// Rescales to unit norm; fails on the zero vector.
    pub fn normalized(n_qubits: usize, amplitudes: Vec<C64>) -> Result<Self> {
        let mut state = Self::with_length(n_qubits, amplitudes)?;
        let norm = state.norm_sqr().sqrt();
        if norm.is_nan() || norm <= 0.0 || !norm.is_finite() {
            return Err(Error::InvalidState(
                "cannot normalize a zero or non-finite vector".into(),
            ));
        }
        for a in &mut state.amplitudes {
            *a /= norm;
        }
        Ok(state)
    }

    fn with_length(n_qubits: usize, amplitudes: Vec<C64>) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::InvalidState("a state needs at least one qubit".into()));
        }
        let expected = 1usize.checked_shl(n_qubits as u32).ok_or(Error::Dimension {
            expected: usize::MAX,
            found: amplitudes.len(),
        })?;
        if amplitudes.len() != expected {
            return Err(Error::Dimension {
                expected,
                found: amplitudes.len(),
            });
        }
        Ok(PureState { n_qubits, amplitudes })
    }

    /// `|index>` in the computational basis.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::Dimension {
                expected: dim,
                found: index,
            });
        }
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[index] = C64::new(1.0, 0.0);
        Self::new(n_qubits, amplitudes)
    }

    pub(crate) fn from_parts_unchecked(n_qubits: usize, amplitudes: Vec<C64>) -> Self {
        debug_assert_eq!(amplitudes.len(), 1 << n_qubits);
        PureState { n_qubits, amplitudes }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amplitudes[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }
}

/// Hermitian, positive-semidefinite, unit-trace operator on `n_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    n_qubits: usize,
    matrix: CMatrix,
}

/// Decides positive semidefiniteness up to `psd_tol` without a full eigendecomposition:
/// Cholesky of `m + psd_tol * I` succeeds iff its smallest eigenvalue is positive.
fn is_psd(m: &CMatrix, psd_tol: f64) -> bool {
    let n = m.dim();
    let mut l = vec![ZERO; n * n];
    for j in 0..n {
        let mut d = m[(j, j)].re + psd_tol;
        for k in 0..j {
            d -= l[j * n + k].norm_sqr();
        }
        if d.is_nan() || d <= 0.0 {
            return false;
        }
        let d = d.sqrt();
        l[j * n + j] = C64::new(d, 0.0);
        for i in (j + 1)..n {
            let mut s = m[(i, j)];
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k].conj();
            }
            l[i * n + j] = s / d;
        }
    }
    true
}

impl DensityOperator {
    /// Validates Hermiticity, unit trace and positive semidefiniteness.
    pub fn new(n_qubits: usize, matrix: CMatrix) -> Result<Self> {
        let tol = Tolerances::DEFAULT;
        if n_qubits == 0 || n_qubits >= usize::BITS as usize / 2 {
            return Err(Error::InvalidState(format!("unsupported qubit count {n_qubits}")));
        }
        let expected = 1usize << n_qubits;
        if matrix.dim() != expected {
            return Err(Error::Dimension {
                expected,
                found: matrix.dim(),
            });
        }
        let deviation = matrix.hermitian_deviation();
        if deviation > tol.hermitian {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > tol.trace || trace.im.abs() > tol.trace {
            return Err(Error::InvalidState(format!("trace {trace} differs from 1")));
        }
        if !is_psd(&matrix, tol.psd) {
            return Err(Error::InvalidState("operator has an eigenvalue below -1e-10".into()));
        }
        Ok(DensityOperator { n_qubits, matrix })
    }

    /// For operators that are valid by construction (projectors, partial traces, mixtures).
    pub(crate) fn from_parts_unchecked(n_qubits: usize, matrix: CMatrix) -> Self {
        debug_assert_eq!(matrix.dim(), 1 << n_qubits);
        DensityOperator { n_qubits, matrix }
    }

    /// `I / 2^n`.
    pub fn maximally_mixed(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        Self::from_parts_unchecked(n_qubits, CMatrix::identity(dim).scale(1.0 / dim as f64))
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.matrix[(r, c)]
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// `self ⊗ other`, with `self`'s qubits first.
    pub fn tensor(&self, other: &DensityOperator) -> DensityOperator {
        Self::from_parts_unchecked(self.n_qubits + other.n_qubits, self.matrix.kron(&other.matrix))
    }

    /// Descending spectrum (meant for small operators).
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        hermitian_eigenvalues(&self.matrix, Tolerances::DEFAULT.hermitian)
    }

    /// Convex combination `sum p_i rho_i` of operators on the same number of qubits.
    pub fn mixture(parts: &[(f64, &DensityOperator)]) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidState("empty mixture".into()))?
            .1;
        let mut acc = CMatrix::zeros(first.dim());
        for &(p, rho) in parts {
            if rho.n_qubits != first.n_qubits {
                return Err(Error::Dimension {
                    expected: first.n_qubits,
                    found: rho.n_qubits,
                });
            }
            if p.is_nan() || p < 0.0 {
                return Err(Error::Domain(format!("mixture weight {p} is negative")));
            }
            acc = acc.add(&rho.matrix.scale(p));
        }
        Self::new(first.n_qubits, acc)
    }
}
