//! Cyclic Jacobi eigensolver for small Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal unitary,
//! then annihilates the now-real pivot with a plane rotation. Sweeps run over the upper
//! triangle in row order, so the output is fully deterministic.

use super::matrix::{CMatrix, C64, ZERO};
use crate::config::Tolerances;
use crate::error::{Error, Result};

/// Eigenvalues sorted in descending order, with the matching unit eigenvectors stored as
/// the columns of `vectors`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl HermitianEigen {
    /// `V f(Λ) V^dagger`.
    pub fn reconstruct(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let n = self.values.len();
        let mapped: Vec<f64> = self.values.iter().map(|&v| f(v)).collect();
        CMatrix::from_fn(n, |r, c| {
            let mut acc = ZERO;
            for (k, &w) in mapped.iter().enumerate() {
                if w != 0.0 {
                    acc += self.vectors[(r, k)] * self.vectors[(c, k)].conj() * w;
                }
            }
            acc
        })
    }
}

/// Descending eigenvalues of the Hermitian part of `m`.
///
/// Fails when `m` deviates from Hermitian by more than `tol`, or when the sweep budget in
/// [`Tolerances::DEFAULT`] is exhausted.
pub fn hermitian_eigenvalues(m: &CMatrix, tol: f64) -> Result<Vec<f64>> {
    Ok(jacobi(m, tol, &Tolerances::DEFAULT, false)?.values)
}

/// Eigenvalues and eigenvectors of the Hermitian part of `m`.
pub fn hermitian_eigen(m: &CMatrix, tol: f64) -> Result<HermitianEigen> {
    jacobi(m, tol, &Tolerances::DEFAULT, true)
}

/// Full control over the convergence settings.
pub fn hermitian_eigen_with(m: &CMatrix, tol: f64, settings: &Tolerances) -> Result<HermitianEigen> {
    jacobi(m, tol, settings, true)
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.dim();
    let mut sum = 0.0;
    for r in 0..n {
        for c in (r + 1)..n {
            sum += 2.0 * a[(r, c)].norm_sqr();
        }
    }
    sum.sqrt()
}

fn jacobi(m: &CMatrix, tol: f64, settings: &Tolerances, want_vectors: bool) -> Result<HermitianEigen> {
    let deviation = m.hermitian_deviation();
    if deviation > tol {
        return Err(Error::NotHermitian { deviation });
    }
    let n = m.dim();
    let mut a = m.hermitian_part();
    for i in 0..n {
        a[(i, i)].im = 0.0;
    }
    let mut v = CMatrix::identity(n);
    let threshold = settings.jacobi_convergence * a.frobenius_norm().max(1.0);

    let mut converged = off_diagonal_norm(&a) < threshold;
    let mut sweeps = 0;
    while !converged {
        if sweeps == settings.jacobi_max_sweeps {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q, want_vectors);
            }
        }
        converged = off_diagonal_norm(&a) < threshold;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re).then(i.cmp(&j)));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = if want_vectors {
        CMatrix::from_fn(n, |r, c| v[(r, order[c])])
    } else {
        CMatrix::zeros(0)
    };
    Ok(HermitianEigen { values, vectors })
}

/// One two-sided rotation `A <- U^dagger A U` that zeroes `a[p][q]`.
fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize, want_vectors: bool) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Skip pivots that are already negligible against both diagonal entries.
    if r < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = ZERO;
        a[(q, p)] = ZERO;
        return;
    }
    let phase = apq / r; // e^{i phi}
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // U = diag(1, e^{-i phi}) * [[c, s], [-s, c]] on the (p, q) plane.
    let u_pp = C64::new(c, 0.0);
    let u_pq = C64::new(s, 0.0);
    let u_qp = -phase.conj() * s;
    let u_qq = phase.conj() * c;

    let n = a.dim();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * u_pp + akq * u_qp;
        a[(k, q)] = akp * u_pq + akq * u_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
        a[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;

    if want_vectors {
        for k in 0..n {
            let vkp = v[(k, p)];
            let vkq = v[(k, q)];
            v[(k, p)] = vkp * u_pp + vkq * u_qp;
            v[(k, q)] = vkp * u_pq + vkq * u_qq;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::matrix::ONE;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn diagonal_input_is_sorted_descending() {
        let m = CMatrix::from_diagonal(&[3.0, 1.0, 2.0]);
        assert_eq!(hermitian_eigenvalues(&m, 1e-12).unwrap(), vec![3.0, 2.0, 1.0]);
    }

    #[test]
    fn phi_plus_projector_is_rank_one() {
        let mut m = CMatrix::zeros(4);
        for &(r, col) in &[(0, 0), (0, 3), (3, 0), (3, 3)] {
            m[(r, col)] = c(0.5, 0.0);
        }
        let vals = hermitian_eigenvalues(&m, 1e-12).unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-15);
        for v in &vals[1..] {
            assert!(v.abs() < 1e-15);
        }
    }

    #[test]
    fn complex_two_by_two_matches_closed_form() {
        // [[2, 1-i], [1+i, 3]]: eigenvalues (5 ± sqrt(1 + 8)) / 2 = 4, 1
        let m = CMatrix::from_row_major(vec![c(2.0, 0.0), c(1.0, -1.0), c(1.0, 1.0), c(3.0, 0.0)]).unwrap();
        let eig = hermitian_eigen(&m, 1e-12).unwrap();
        assert!((eig.values[0] - 4.0).abs() < 1e-14);
        assert!((eig.values[1] - 1.0).abs() < 1e-14);
        let back = eig.reconstruct(|x| x);
        assert!(back.max_abs_diff(&m) < 1e-14);
    }

    #[test]
    fn eigenvectors_are_unitary() {
        let m = CMatrix::from_fn(5, |r, col| {
            if r == col {
                c(r as f64, 0.0)
            } else {
                c(0.3 / (1.0 + r as f64 + col as f64), 0.1 * (r as f64 - col as f64))
            }
        });
        let eig = hermitian_eigen(&m, 1e-12).unwrap();
        let vv = eig.vectors.adjoint().matmul(&eig.vectors);
        assert!(vv.max_abs_diff(&CMatrix::identity(5)) < 1e-13);
    }

    #[test]
    fn rejects_non_hermitian_input() {
        let mut m = CMatrix::identity(2);
        m[(0, 1)] = ONE;
        assert!(matches!(
            hermitian_eigenvalues(&m, 1e-12),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn exhausted_budget_is_reported() {
        let m = CMatrix::from_fn(4, |r, col| if r == col { c(r as f64, 0.0) } else { c(0.5, 0.0) });
        let settings = Tolerances {
            jacobi_max_sweeps: 0,
            ..Tolerances::DEFAULT
        };
        assert!(matches!(
            hermitian_eigen_with(&m, 1e-12, &settings),
            Err(Error::NoConvergence { sweeps: 0 })
        ));
    }
}
