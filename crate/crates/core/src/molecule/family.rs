use super::spec::MoleculeSpec;
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::qcore::{check_qubit, qubit_mask, CMatrix, DensityOperator, C64};

/// The mixture `(1/M) sum x_kl |Psi_kl><Psi_kl|`, where `|Psi_kl>` is `|Psi+>` on `k, l`
/// and `|0>` elsewhere. Kept as the weighted edge list plus per-qubit weight sums; the
/// dense `2^N x 2^N` operator is only built on request by [`dense_family_state`].
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyState {
    spec: MoleculeSpec,
    total: f64,
    /// `degree[q - 1]`: summed weight of the edges touching qubit `q`.
    degree: Vec<f64>,
}

impl FamilyState {
    pub fn new(spec: MoleculeSpec) -> Self {
        let mut degree = vec![0.0; spec.n_qubits()];
        for ((k, l), w) in spec.edges() {
            degree[k - 1] += w.value;
            degree[l - 1] += w.value;
        }
        let total = spec.total_weight();
        FamilyState { spec, total, degree }
    }

    pub fn spec(&self) -> &MoleculeSpec {
        &self.spec
    }

    pub fn n_qubits(&self) -> usize {
        self.spec.n_qubits()
    }

    /// Normalization `M`.
    pub fn normalization(&self) -> f64 {
        self.total
    }

    /// Reduced operator on `(k, l)` in `O(log |I|)`, `k` as the first tensor factor.
    ///
    /// Tracing out everything else, the component `(k, l)` itself contributes
    /// `x |Psi+><Psi+|`; a component touching only `k` contributes `x/2` to `|00>` and
    /// `x/2` to `|10>` (symmetrically `|01>` for `l`); a disjoint component contributes `x`
    /// to `|00>`. The `|11>` population is always zero.
    pub fn analytic_pair_reduction(&self, k: usize, l: usize) -> Result<DensityOperator> {
        let n = self.n_qubits();
        check_qubit(n, k)?;
        check_qubit(n, l)?;
        if k == l {
            return Err(Error::DuplicateQubit(k));
        }
        let own = self.spec.weight(k, l).map_or(0.0, |w| w.value);
        let only_k = self.degree[k - 1] - own;
        let only_l = self.degree[l - 1] - own;
        let disjoint = (self.total - self.degree[k - 1] - self.degree[l - 1] + own).max(0.0);
        let m = self.total;
        let mut rho = CMatrix::zeros(4);
        rho[(0, 0)] = C64::new((disjoint + 0.5 * only_k + 0.5 * only_l) / m, 0.0);
        rho[(1, 1)] = C64::new((0.5 * own + 0.5 * only_l) / m, 0.0);
        rho[(2, 2)] = C64::new((0.5 * own + 0.5 * only_k) / m, 0.0);
        let coherence = C64::new(0.5 * own / m, 0.0);
        rho[(1, 2)] = coherence;
        rho[(2, 1)] = coherence;
        Ok(DensityOperator::from_parts_unchecked(2, rho))
    }
}

impl From<MoleculeSpec> for FamilyState {
    fn from(spec: MoleculeSpec) -> Self {
        FamilyState::new(spec)
    }
}

/// The family state as a dense operator, for cross-checking at small `N`.
pub fn dense_family_state(fam: &FamilyState, limits: &Limits) -> Result<DensityOperator> {
    let n = fam.n_qubits();
    limits.check_density(n)?;
    let mut rho = CMatrix::zeros(1 << n);
    let m = fam.normalization();
    for ((k, l), w) in fam.spec().edges() {
        let (a, b) = (qubit_mask(n, k), qubit_mask(n, l));
        let half = C64::new(0.5 * w.value / m, 0.0);
        for (r, c) in [(a, a), (a, b), (b, a), (b, b)] {
            rho[(r, c)] += half;
        }
    }
    Ok(DensityOperator::from_parts_unchecked(n, rho))
}
