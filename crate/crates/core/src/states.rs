//! Constructors for the named states: GHZ, embedded Bell pairs, W, star states and
//! Haar-random samples.

use crate::config::{Limits, Tolerances};
use crate::error::{Error, Result};
use crate::qcore::{check_qubit, qubit_mask, CMatrix, DensityOperator, PureState, C64, ZERO};
use crate::rng::SplitMix64;

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn zeros(n: usize, limits: &Limits) -> Result<Vec<C64>> {
    limits.check_pure(n)?;
    Ok(vec![ZERO; 1usize << n])
}

/// `(|0...0> + |1...1>) / sqrt 2`.
pub fn ghz(n: usize, limits: &Limits) -> Result<PureState> {
    if n < 2 {
        return Err(Error::Domain(format!("GHZ state needs n >= 2, got {n}")));
    }
    let mut amps = zeros(n, limits)?;
    amps[0] = real(FRAC_1_SQRT_2);
    amps[(1 << n) - 1] = real(FRAC_1_SQRT_2);
    Ok(PureState::from_parts_unchecked(n, amps))
}

/// `|Psi+>` on qubits `i, j` with every other qubit in `|0>`.
pub fn embedded_bell(n: usize, i: usize, j: usize, limits: &Limits) -> Result<PureState> {
    if n < 2 {
        return Err(Error::Domain(format!("embedded Bell pair needs n >= 2, got {n}")));
    }
    check_qubit(n, i)?;
    check_qubit(n, j)?;
    if i == j {
        return Err(Error::DuplicateQubit(i));
    }
    let mut amps = zeros(n, limits)?;
    amps[qubit_mask(n, i)] = real(FRAC_1_SQRT_2);
    amps[qubit_mask(n, j)] = real(FRAC_1_SQRT_2);
    Ok(PureState::from_parts_unchecked(n, amps))
}

/// Equal superposition of the `n` Hamming-weight-one basis states.
pub fn w_state(n: usize, limits: &Limits) -> Result<PureState> {
    if n < 2 {
        return Err(Error::Domain(format!("W state needs n >= 2, got {n}")));
    }
    let mut amps = zeros(n, limits)?;
    let a = real(1.0 / (n as f64).sqrt());
    for q in 1..=n {
        amps[qubit_mask(n, q)] = a;
    }
    Ok(PureState::from_parts_unchecked(n, amps))
}

/// `a |1>|0...0> + b |0>|N-2,1>` where `|N-2,1>` is the unnormalized sum of the `n - 1`
/// single-excitation states of qubits `2..=n`. Requires `a^2 + (n-1) b^2 = 1`.
pub fn star_pure_state(n: usize, a: f64, b: f64, limits: &Limits) -> Result<PureState> {
    if n < 3 {
        return Err(Error::Domain(format!("star pure state needs n >= 3, got {n}")));
    }
    let norm = a * a + (n - 1) as f64 * b * b;
    let close = (norm - 1.0).abs() <= Tolerances::DEFAULT.star_normalization;
    if !close {
        return Err(Error::Domain(format!(
            "star parameters violate a^2 + (n-1) b^2 = 1 (got {norm})"
        )));
    }
    let mut amps = zeros(n, limits)?;
    amps[qubit_mask(n, 1)] = real(a);
    for q in 2..=n {
        amps[qubit_mask(n, q)] = real(b);
    }
    Ok(PureState::from_parts_unchecked(n, amps))
}

/// Haar-random pure state: `2^n` independent standard complex Gaussians, normalized.
/// Deterministic in `seed` (see [`crate::rng`] for the exact stream).
pub fn random_pure(n: usize, seed: u64, limits: &Limits) -> Result<PureState> {
    random_pure_from(n, &mut SplitMix64::new(seed), limits)
}

pub fn random_pure_from(n: usize, rng: &mut SplitMix64, limits: &Limits) -> Result<PureState> {
    let mut amps = zeros(n, limits)?;
    for a in &mut amps {
        *a = rng.next_complex_normal();
    }
    PureState::normalized(n, amps)
}

/// Hilbert-Schmidt random density operator `G G^dagger / tr(G G^dagger)` with `G` a
/// complex Ginibre matrix.
pub fn random_density(n: usize, seed: u64, limits: &Limits) -> Result<DensityOperator> {
    limits.check_density(n)?;
    let mut rng = SplitMix64::new(seed);
    let dim = 1usize << n;
    let g = CMatrix::from_fn(dim, |_, _| rng.next_complex_normal());
    let gg = g.matmul(&g.adjoint());
    let tr = gg.trace().re;
    let m = gg.scale(1.0 / tr).hermitian_part();
    DensityOperator::new(n, m)
}
