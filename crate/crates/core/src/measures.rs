//! Entanglement and fidelity functionals on two-qubit density operators, and the
//! closed-form fidelity/cloning bounds for one qubit shared with `n - 1` partners.

use serde::{Deserialize, Serialize};

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::qcore::{
    hermitian_eigen, hermitian_eigenvalues, partial_transpose, reduced_pair_from_pure, CMatrix, DensityOperator,
    PureState, C64, ZERO,
};
use crate::rng::SplitMix64;

/// Diagonal signs of `sigma_y ⊗ sigma_y` along its anti-diagonal: `Y[r][3-r] = SIGNS[r]`.
const SIGMA_YY_SIGNS: [f64; 4] = [-1.0, 1.0, 1.0, -1.0];

fn require_two_qubits(rho: &DensityOperator) -> Result<()> {
    if rho.n_qubits() != 2 {
        return Err(Error::Dimension {
            expected: 2,
            found: rho.n_qubits(),
        });
    }
    Ok(())
}

fn flip_matrix(m: &CMatrix) -> CMatrix {
    CMatrix::from_fn(4, |r, c| {
        m[(3 - r, 3 - c)].conj() * (SIGMA_YY_SIGNS[r] * SIGMA_YY_SIGNS[c])
    })
}

/// `(sigma_y ⊗ sigma_y) rho* (sigma_y ⊗ sigma_y)`.
pub fn spin_flip(rho: &DensityOperator) -> Result<CMatrix> {
    require_two_qubits(rho)?;
    Ok(flip_matrix(rho.matrix()))
}

/// Principal square root of a PSD matrix. Eigenvalues in `[-psd, rank_cutoff)` are
/// treated as exact zeros.
fn sqrt_psd(m: &CMatrix, tol: &Tolerances) -> Result<CMatrix> {
    let eig = hermitian_eigen(m, tol.hermitian)?;
    if let Some(&low) = eig.values.last() {
        if low < -tol.psd {
            return Err(Error::InvalidState(format!("operator has negative eigenvalue {low:e}")));
        }
    }
    Ok(eig.reconstruct(|v| if v < tol.rank_cutoff { 0.0 } else { v.sqrt() }))
}

/// Descending `lambda_1..lambda_4`: square roots of the eigenvalues of the Hermitian
/// product `sqrt(rho) rho~ sqrt(rho)`.
///
/// They are read off as the singular values of `K = sqrt(rho) sqrt(rho~)` (note
/// `K K^dagger = sqrt(rho) rho~ sqrt(rho)`), i.e. the non-negative eigenvalues of the
/// Hermitian dilation `[[0, K], [K^dagger, 0]]`. Small singular values keep absolute
/// accuracy instead of the square-root amplification of rounding noise.
pub fn spin_flip_spectrum(rho: &DensityOperator) -> Result<[f64; 4]> {
    require_two_qubits(rho)?;
    let tol = Tolerances::DEFAULT;
    let root = sqrt_psd(rho.matrix(), &tol)?;
    let root_flipped = flip_matrix(&root);
    let k = root.matmul(&root_flipped);
    let dilation = CMatrix::from_fn(8, |r, c| match (r < 4, c < 4) {
        (true, false) => k[(r, c - 4)],
        (false, true) => k[(c, r - 4)].conj(),
        _ => ZERO,
    });
    let vals = hermitian_eigenvalues(&dilation, tol.hermitian)?;
    Ok([vals[0].max(0.0), vals[1].max(0.0), vals[2].max(0.0), vals[3].max(0.0)])
}

/// Wootters concurrence `max(0, l1 - l2 - l3 - l4)`.
pub fn concurrence(rho: &DensityOperator) -> Result<f64> {
    let l = spin_flip_spectrum(rho)?;
    Ok((l[0] - l[1] - l[2] - l[3]).clamp(0.0, 1.0))
}

fn binary_entropy(x: f64) -> f64 {
    let term = |p: f64| if p <= 0.0 { 0.0 } else { -p * p.log2() };
    term(x) + term(1.0 - x)
}

/// `h(1/2 + sqrt(1 - c^2) / 2)` with `h` the binary entropy and `0 log 0 = 0`.
pub fn entanglement_of_formation(c: f64) -> Result<f64> {
    if !(0.0..=1.0 + 1e-12).contains(&c) {
        return Err(Error::Domain(format!("concurrence {c} outside [0, 1]")));
    }
    let c = c.min(1.0);
    Ok(binary_entropy(0.5 + 0.5 * (1.0 - c * c).sqrt()))
}

/// Columns are the magic-basis vectors in the computational basis:
/// `(|00>+|11>)/√2, i(|00>-|11>)/√2, i(|01>+|10>)/√2, (|01>-|10>)/√2`.
fn magic_basis() -> CMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let (r, i) = (C64::new(s, 0.0), C64::new(0.0, s));
    #[rustfmt::skip]
    let rows = vec![
        r,    i,    ZERO,  ZERO,
        ZERO, ZERO, i,     r,
        ZERO, ZERO, i,     -r,
        r,    -i,   ZERO,  ZERO,
    ];
    CMatrix::from_row_major(rows).expect("4x4")
}

/// Maximum overlap `<Phi|rho|Phi>` over maximally entangled `|Phi>`.
///
/// Maximally entangled states are exactly the real unit vectors (up to a global phase) in
/// the magic basis, so the maximum is the top eigenvalue of the real part of `rho` written
/// in that basis.
pub fn fully_entangled_fraction(rho: &DensityOperator) -> Result<f64> {
    require_two_qubits(rho)?;
    let b = magic_basis();
    let in_magic = b.adjoint().matmul(rho.matrix()).matmul(&b);
    let real_part = CMatrix::from_fn(4, |r, c| C64::new(in_magic[(r, c)].re, 0.0)).hermitian_part();
    let vals = hermitian_eigenvalues(&real_part, 1e-10)?;
    Ok(vals[0])
}

/// `<Phi(U)|rho|Phi(U)>` for `|Phi(U)> = (U ⊗ 1)(|00>+|11>)/√2`, with
/// `U = e^{i alpha} [[e^{i beta} cos t, e^{i gamma} sin t], [-e^{-i gamma} sin t, e^{-i beta} cos t]]`.
fn oracle_overlap(rho: &CMatrix, angles: &[f64; 4]) -> f64 {
    let [t, alpha, beta, gamma] = *angles;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let g = C64::from_polar(s, alpha);
    let phi = [
        g * C64::from_polar(t.cos(), beta),
        g * C64::from_polar(t.sin(), gamma),
        -g * C64::from_polar(t.sin(), -gamma),
        g * C64::from_polar(t.cos(), -beta),
    ];
    let mut acc = ZERO;
    for r in 0..4 {
        let mut row = ZERO;
        for c in 0..4 {
            row += rho[(r, c)] * phi[c];
        }
        acc += phi[r].conj() * row;
    }
    acc.re
}

const ORACLE_INITIAL_STEP: f64 = 0.3;
const ORACLE_SHRINK: f64 = 0.5;
const ORACLE_STEP_FLOOR: f64 = 1e-7;

/// Default restart count for [`fef_oracle`].
pub const ORACLE_RESTARTS: usize = 20;

/// Numerical lower bound on the fully entangled fraction by multi-start compass search
/// over the four angles of `U` (initial step 0.3 rad, halved on failure, stopping below
/// 1e-7). Restart `k` starts from angles drawn from `SplitMix64::stream(seed, k)`, so the
/// result is non-decreasing in `restarts`.
pub fn fef_oracle(rho: &DensityOperator, restarts: usize, seed: u64) -> Result<f64> {
    require_two_qubits(rho)?;
    if restarts == 0 {
        return Err(Error::Domain("fef_oracle needs at least one restart".into()));
    }
    let m = rho.matrix();
    let mut best = f64::NEG_INFINITY;
    for k in 0..restarts {
        let mut rng = SplitMix64::stream(seed, k as u64);
        let mut x = [0.0; 4];
        for a in &mut x {
            *a = rng.next_f64() * std::f64::consts::TAU;
        }
        let mut fx = oracle_overlap(m, &x);
        let mut step = ORACLE_INITIAL_STEP;
        while step >= ORACLE_STEP_FLOOR {
            let mut improved = false;
            for coord in 0..4 {
                for dir in [1.0, -1.0] {
                    let mut y = x;
                    y[coord] += dir * step;
                    let fy = oracle_overlap(m, &y);
                    if fy > fx {
                        x = y;
                        fx = fy;
                        improved = true;
                        break;
                    }
                }
            }
            if !improved {
                step *= ORACLE_SHRINK;
            }
        }
        best = best.max(fx);
    }
    Ok(best)
}

fn check_fraction(name: &str, x: f64) -> Result<()> {
    if !(-1e-12..=1.0 + 1e-12).contains(&x) {
        return Err(Error::Domain(format!("{name} {x} outside [0, 1]")));
    }
    Ok(())
}

/// Best teleportation fidelity `(2 F + 1) / 3` from a resource with fully entangled
/// fraction `F`.
pub fn teleport_fidelity(fef: f64) -> Result<f64> {
    check_fraction("fully entangled fraction", fef)?;
    Ok((2.0 * fef + 1.0) / 3.0)
}

fn check_parties(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Domain(format!("need n >= 2 parties, got {n}")));
    }
    Ok(())
}

/// Optimal `1 -> n-1` cloning fidelity `(2(n-1) + 1) / (3(n-1))`.
pub fn cloning_bound(n: usize) -> Result<f64> {
    check_parties(n)?;
    let m = (n - 1) as f64;
    Ok((2.0 * m + 1.0) / (3.0 * m))
}

/// Largest fully entangled fraction one qubit can share equally with `n - 1` others:
/// `1/2 + 1/(2(n-1))`.
pub fn fidelity_bound(n: usize) -> Result<f64> {
    check_parties(n)?;
    Ok(0.5 + 0.5 / (n - 1) as f64)
}

/// Positive-partial-transpose verdict and the minimum eigenvalue of the partial transpose.
pub fn is_ppt(rho: &DensityOperator, tol: f64) -> Result<(bool, f64)> {
    let pt = partial_transpose(rho, 2)?;
    let vals = hermitian_eigenvalues(&pt, Tolerances::DEFAULT.hermitian)?;
    let min = vals[3];
    Ok((min >= -tol, min))
}

/// Minimum of the three pairwise concurrences of a three-qubit pure state.
pub fn min_pair_concurrence(psi: &PureState) -> Result<f64> {
    if psi.n_qubits() != 3 {
        return Err(Error::Dimension {
            expected: 3,
            found: psi.n_qubits(),
        });
    }
    let mut min = f64::INFINITY;
    for (i, j) in [(1, 2), (1, 3), (2, 3)] {
        min = min.min(concurrence(&reduced_pair_from_pure(psi, i, j)?)?);
    }
    Ok(min)
}

/// Everything reported for a single pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairMeasures {
    pub concurrence: f64,
    pub eof: f64,
    pub fef: f64,
    pub teleport_fidelity: f64,
    pub ppt: bool,
    pub min_pt_eigenvalue: f64,
}

impl PairMeasures {
    pub fn compute(rho: &DensityOperator, ppt_tol: f64) -> Result<Self> {
        let concurrence = concurrence(rho)?;
        let fef = fully_entangled_fraction(rho)?;
        let (ppt, min_pt_eigenvalue) = is_ppt(rho, ppt_tol)?;
        Ok(PairMeasures {
            concurrence,
            eof: entanglement_of_formation(concurrence)?,
            fef,
            teleport_fidelity: teleport_fidelity(fef.clamp(0.0, 1.0))?,
            ppt,
            min_pt_eigenvalue,
        })
    }
}
