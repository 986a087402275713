#![allow(dead_code)]

use entmol::molecule::{MoleculeSpec, Weight};
use entmol::qcore::{CMatrix, DensityOperator, C64};
use entmol::rng::SplitMix64;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn random_hermitian(dim: usize, rng: &mut SplitMix64) -> CMatrix {
    let g = CMatrix::from_fn(dim, |_, _| c(rng.next_normal(), rng.next_normal()));
    g.add(&g.adjoint()).scale(0.5)
}

/// Haar-random 2x2 unitary from the normalized complex Gram-Schmidt of a Ginibre matrix.
pub fn random_unitary2(rng: &mut SplitMix64) -> CMatrix {
    let col = |rng: &mut SplitMix64| {
        [
            c(rng.next_normal(), rng.next_normal()),
            c(rng.next_normal(), rng.next_normal()),
        ]
    };
    let u = col(rng);
    let nu = (u[0].norm_sqr() + u[1].norm_sqr()).sqrt();
    let u = [u[0] / nu, u[1] / nu];
    let v = col(rng);
    let proj = u[0].conj() * v[0] + u[1].conj() * v[1];
    let v = [v[0] - proj * u[0], v[1] - proj * u[1]];
    let nv = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    let v = [v[0] / nv, v[1] / nv];
    CMatrix::from_row_major(vec![u[0], v[0], u[1], v[1]]).unwrap()
}

pub fn conjugate(rho: &DensityOperator, u: &CMatrix) -> DensityOperator {
    let m = u.matmul(rho.matrix()).matmul(&u.adjoint()).hermitian_part();
    DensityOperator::new(rho.n_qubits(), m).unwrap()
}

/// Random spec on `2..=max_n` qubits with random positive weights on a random edge subset.
pub fn random_spec(rng: &mut SplitMix64, max_n: usize) -> MoleculeSpec {
    let n = 2 + (rng.next_u64() % (max_n as u64 - 1)) as usize;
    loop {
        let mut edges = Vec::new();
        for k in 1..=n {
            for l in k + 1..=n {
                if rng.next_f64() < 0.5 {
                    edges.push((k, l, Weight::new(0.05 + rng.next_f64())));
                }
            }
        }
        if !edges.is_empty() {
            return MoleculeSpec::new(n, edges, None).unwrap();
        }
    }
}

/// Real roots of a polynomial with only real roots (coefficients highest degree first),
/// by bisection between the roots of its derivative.
pub fn real_roots(coeffs: &[f64]) -> Vec<f64> {
    let eval = |p: &[f64], x: f64| p.iter().fold(0.0, |acc, &a| acc * x + a);
    let degree = coeffs.len() - 1;
    if degree == 1 {
        return vec![-coeffs[1] / coeffs[0]];
    }
    let derivative: Vec<f64> = coeffs[..degree]
        .iter()
        .enumerate()
        .map(|(i, &a)| a * (degree - i) as f64)
        .collect();
    let bound = 1.0 + coeffs[1..].iter().map(|a| (a / coeffs[0]).abs()).fold(0.0, f64::max);
    let mut marks = vec![-bound];
    marks.extend(real_roots(&derivative));
    marks.push(bound);
    marks.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut roots = Vec::new();
    for w in marks.windows(2) {
        let (mut lo, mut hi) = (w[0], w[1]);
        let (flo, fhi) = (eval(coeffs, lo), eval(coeffs, hi));
        if flo == 0.0 {
            roots.push(lo);
            continue;
        }
        if flo.signum() == fhi.signum() {
            // double root at a critical point
            if eval(coeffs, hi).abs() < 1e-9 {
                roots.push(hi);
            }
            continue;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if eval(coeffs, mid).signum() == flo.signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        roots.push(0.5 * (lo + hi));
    }
    roots.sort_by(|a, b| b.partial_cmp(a).unwrap());
    roots
}

/// Characteristic polynomial `det(xI - A)` via Faddeev-LeVerrier, highest degree first.
pub fn characteristic_polynomial(a: &CMatrix) -> Vec<f64> {
    let n = a.dim();
    let mut coeffs = vec![1.0];
    let mut m = CMatrix::zeros(n);
    let mut prev = 1.0;
    for k in 1..=n {
        m = a.matmul(&m).add(&CMatrix::identity(n).scale(prev));
        let ck = -a.matmul(&m).trace().re / k as f64;
        coeffs.push(ck);
        prev = ck;
    }
    coeffs
}
