use super::matrix::{CMatrix, ZERO};
use super::state::{check_qubit, qubit_mask, DensityOperator, PureState};
use crate::config::Limits;
use crate::error::{Error, Result};

/// `a ⊗ b`; the amplitude at `i * 2^b.n + j` is `a[i] * b[j]`.
pub fn tensor_product(a: &PureState, b: &PureState, limits: &Limits) -> Result<PureState> {
    let n = a.n_qubits() + b.n_qubits();
    limits.check_pure(n)?;
    let mut amps = Vec::with_capacity(a.dim() * b.dim());
    for &x in a.amplitudes() {
        amps.extend(b.amplitudes().iter().map(|&y| x * y));
    }
    Ok(PureState::from_parts_unchecked(n, amps))
}

/// `|psi><psi|`.
pub fn outer_product(psi: &PureState, limits: &Limits) -> Result<DensityOperator> {
    limits.check_density(psi.n_qubits())?;
    let amps = psi.amplitudes();
    let m = CMatrix::from_fn(psi.dim(), |r, c| amps[r] * amps[c].conj());
    Ok(DensityOperator::from_parts_unchecked(psi.n_qubits(), m))
}

fn check_keep(n_qubits: usize, keep: &[usize]) -> Result<()> {
    if keep.is_empty() {
        return Err(Error::Domain("partial trace must keep at least one qubit".into()));
    }
    for (pos, &q) in keep.iter().enumerate() {
        check_qubit(n_qubits, q)?;
        if keep[..pos].contains(&q) {
            return Err(Error::DuplicateQubit(q));
        }
    }
    Ok(())
}

/// Expands a `keep.len()`-bit index (first kept qubit most significant) into the full
/// register's bit positions.
fn scatter(n_qubits: usize, keep: &[usize], local: usize) -> usize {
    let k = keep.len();
    keep.iter().enumerate().fold(0, |acc, (pos, &q)| {
        if local & (1 << (k - 1 - pos)) != 0 {
            acc | qubit_mask(n_qubits, q)
        } else {
            acc
        }
    })
}

/// Indices of the traced-out register with every kept bit cleared.
fn environment_indices(n_qubits: usize, keep: &[usize]) -> Vec<usize> {
    let kept_mask: usize = keep.iter().map(|&q| qubit_mask(n_qubits, q)).sum();
    (0..(1usize << n_qubits)).filter(|x| x & kept_mask == 0).collect()
}

/// Reduced operator on `keep` (1-based, in the listed order).
pub fn partial_trace(rho: &DensityOperator, keep: &[usize]) -> Result<DensityOperator> {
    let n = rho.n_qubits();
    check_keep(n, keep)?;
    let k = keep.len();
    let local_dim = 1usize << k;
    let offsets: Vec<usize> = (0..local_dim).map(|l| scatter(n, keep, l)).collect();
    let env = environment_indices(n, keep);
    let m = rho.matrix();
    let out = CMatrix::from_fn(local_dim, |r, c| {
        env.iter()
            .map(|&e| m[(e | offsets[r], e | offsets[c])])
            .fold(ZERO, |acc, z| acc + z)
    });
    Ok(DensityOperator::from_parts_unchecked(k, out))
}

/// Two-qubit reduction `tr_rest |psi><psi|` on qubits `(i, j)`, contracted directly from
/// the amplitudes in `O(2^n)` time without forming the dense operator. Qubit `i` is the
/// first tensor factor of the result.
pub fn reduced_pair_from_pure(psi: &PureState, i: usize, j: usize) -> Result<DensityOperator> {
    let n = psi.n_qubits();
    check_keep(n, &[i, j])?;
    let (mi, mj) = (qubit_mask(n, i), qubit_mask(n, j));
    let offsets = [0, mj, mi, mi | mj];
    let amps = psi.amplitudes();
    let mut acc = [ZERO; 16];
    for e in 0..amps.len() {
        if e & (mi | mj) != 0 {
            continue;
        }
        let v = [
            amps[e],
            amps[e | offsets[1]],
            amps[e | offsets[2]],
            amps[e | offsets[3]],
        ];
        for r in 0..4 {
            if v[r] == ZERO {
                continue;
            }
            for c in 0..4 {
                acc[4 * r + c] += v[r] * v[c].conj();
            }
        }
    }
    let m = CMatrix::from_row_major(acc.to_vec()).expect("16 entries");
    Ok(DensityOperator::from_parts_unchecked(2, m))
}

/// Transposes the indices of subsystem 1 or 2 of a two-qubit operator.
pub fn partial_transpose(rho: &DensityOperator, subsystem: usize) -> Result<CMatrix> {
    if rho.n_qubits() != 2 {
        return Err(Error::Dimension {
            expected: 2,
            found: rho.n_qubits(),
        });
    }
    let m = rho.matrix();
    let pt = match subsystem {
        1 => CMatrix::from_fn(4, |r, c| {
            let (a, b, cc, d) = (r >> 1, r & 1, c >> 1, c & 1);
            m[((cc << 1) | b, (a << 1) | d)]
        }),
        2 => CMatrix::from_fn(4, |r, c| {
            let (a, b, cc, d) = (r >> 1, r & 1, c >> 1, c & 1);
            m[((a << 1) | d, (cc << 1) | b)]
        }),
        other => {
            return Err(Error::Domain(format!(
                "partial transpose subsystem must be 1 or 2, got {other}"
            )))
        }
    };
    Ok(pt)
}
