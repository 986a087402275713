//! Per-pair analysis reports and binding-pattern checks.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::{Limits, Tolerances};
use crate::error::{Error, Result};
use crate::measures::PairMeasures;
use crate::molecule::{parse_spec, FamilyState, MoleculeSpec, Pair};
use crate::qcore::{partial_trace, reduced_pair_from_pure, DensityOperator, StateFile};

/// Concurrence tolerance for `C_kl = x_kl / M`.
pub const PAIR_VALUE_TOLERANCE: f64 = 1e-12;
/// Tolerance for the sum of all pair concurrences of a family state being one.
pub const SUM_TOLERANCE: f64 = 1e-10;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Rounds to 12 significant digits. The result is exactly representable by its
/// shortest decimal form, so reports survive a JSON round trip unchanged.
pub fn round_sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairRecord {
    pub pair: [usize; 2],
    pub concurrence: f64,
    pub eof: f64,
    pub fef: f64,
    pub teleport_fidelity: f64,
    pub ppt: bool,
    pub min_pt_eigenvalue: f64,
    /// Membership in the binding graph; absent when the input was a bare state.
    #[serde(rename = "in_I")]
    pub in_i: Option<bool>,
    /// Binding weight exactly as written in the molecule spec.
    pub weight: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairValue {
    pub pair: [usize; 2],
    pub concurrence: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GlobalSummary {
    pub concurrence_sum: f64,
    pub max_pair: Option<PairValue>,
    pub min_positive_pair: Option<PairValue>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    /// `"spec"` or `"state"`.
    pub source: String,
    pub name: Option<String>,
    pub input_sha256: String,
    pub tool_version: String,
    pub tolerances: Tolerances,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub n_qubits: usize,
    pub records: Vec<PairRecord>,
    pub global: GlobalSummary,
    pub checks: Vec<CheckResult>,
    pub provenance: Provenance,
}

impl AnalysisReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn record(&self, k: usize, l: usize) -> Option<&PairRecord> {
        let key = [k.min(l), k.max(l)];
        self.records
            .binary_search_by(|r| r.pair.cmp(&key))
            .ok()
            .map(|i| &self.records[i])
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// What an input file turned out to be.
#[derive(Debug, Clone)]
pub enum Input {
    Spec(MoleculeSpec),
    State(StateFile),
    Report(Box<AnalysisReport>),
}

/// Autodetects the input kind: a JSON object is a state file (or a report, when it has
/// `records`); anything else is parsed as a molecule spec.
pub fn detect_input(text: &str) -> Result<Input> {
    if text.trim_start().starts_with('{') {
        let value: serde_json::Value = serde_json::from_str(text)?;
        if value.get("records").is_some() {
            return Ok(Input::Report(serde_json::from_value(value)?));
        }
        return Ok(Input::State(StateFile::from_serialized(serde_json::from_value(
            value,
        )?)?));
    }
    Ok(Input::Spec(parse_spec(text)?))
}

/// All pairs `k < l` in lexicographic order.
pub fn all_pairs(n: usize) -> Vec<Pair> {
    (1..=n).flat_map(|k| ((k + 1)..=n).map(move |l| (k, l))).collect()
}

/// Source of two-qubit reductions.
pub trait PairSource: Sync {
    fn n_qubits(&self) -> usize;
    fn pair_reduction(&self, k: usize, l: usize) -> Result<DensityOperator>;
}

impl PairSource for FamilyState {
    fn n_qubits(&self) -> usize {
        FamilyState::n_qubits(self)
    }

    fn pair_reduction(&self, k: usize, l: usize) -> Result<DensityOperator> {
        self.analytic_pair_reduction(k, l)
    }
}

impl PairSource for StateFile {
    fn n_qubits(&self) -> usize {
        StateFile::n_qubits(self)
    }

    fn pair_reduction(&self, k: usize, l: usize) -> Result<DensityOperator> {
        match self {
            StateFile::Pure(p) => reduced_pair_from_pure(p, k, l),
            StateFile::Density(d) => partial_trace(d, &[k, l]),
        }
    }
}

/// Measures for every pair, computed in parallel and returned in lexicographic order.
pub fn pair_measures(source: &dyn PairSource, tol: f64) -> Result<Vec<(Pair, PairMeasures)>> {
    all_pairs(source.n_qubits())
        .into_par_iter()
        .map(|(k, l)| Ok(((k, l), PairMeasures::compute(&source.pair_reduction(k, l)?, tol)?)))
        .collect()
}

fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn build_records(measures: &[(Pair, PairMeasures)], spec: Option<&MoleculeSpec>) -> Vec<PairRecord> {
    measures
        .iter()
        .map(|&((k, l), m)| PairRecord {
            pair: [k, l],
            concurrence: round_sig12(m.concurrence),
            eof: round_sig12(m.eof),
            fef: round_sig12(m.fef),
            teleport_fidelity: round_sig12(m.teleport_fidelity),
            ppt: m.ppt,
            min_pt_eigenvalue: round_sig12(m.min_pt_eigenvalue),
            in_i: spec.map(|s| s.contains(k, l)),
            weight: spec.and_then(|s| s.weight(k, l)).map(|w| w.text.clone()),
        })
        .collect()
}

fn summarize(records: &[PairRecord], tol: f64) -> GlobalSummary {
    let total: f64 = records.iter().map(|r| r.concurrence).sum();
    let value = |r: &PairRecord| PairValue {
        pair: r.pair,
        concurrence: r.concurrence,
    };
    // ties resolve to the lexicographically first pair
    let max_pair = records
        .iter()
        .fold(None::<&PairRecord>, |best, r| match best {
            Some(b) if b.concurrence >= r.concurrence => Some(b),
            _ => Some(r),
        })
        .map(value);
    let min_positive_pair = records
        .iter()
        .filter(|r| r.concurrence > tol)
        .fold(None::<&PairRecord>, |best, r| match best {
            Some(b) if b.concurrence <= r.concurrence => Some(b),
            _ => Some(r),
        })
        .map(value);
    GlobalSummary {
        concurrence_sum: round_sig12(total),
        max_pair,
        min_positive_pair,
    }
}

fn fmt_pair((k, l): Pair) -> String {
    format!("({k}, {l})")
}

/// Entangled verdicts from concurrence and from the partial transpose must agree.
fn consistency_check(measures: &[(Pair, PairMeasures)], tol: f64) -> CheckResult {
    let bad: Vec<String> = measures
        .iter()
        .filter(|(_, m)| (m.concurrence > tol) != (m.min_pt_eigenvalue < -tol))
        .map(|&(p, _)| fmt_pair(p))
        .collect();
    CheckResult {
        name: "ppt_concurrence_agreement".into(),
        passed: bad.is_empty(),
        detail: if bad.is_empty() {
            "concurrence and partial-transpose verdicts agree on every pair".into()
        } else {
            format!("verdicts disagree on {}", bad.join(", "))
        },
    }
}

/// Checks `C_kl = x_kl / M` on every pair and `sum C_kl = 1`, on unrounded values.
fn family_checks(spec: &MoleculeSpec, measures: &[(Pair, PairMeasures)]) -> Vec<CheckResult> {
    let m = spec.total_weight();
    let mut worst: Option<(Pair, f64)> = None;
    for &((k, l), pm) in measures {
        let expected = spec.weight(k, l).map_or(0.0, |w| w.value / m);
        let err = (pm.concurrence - expected).abs();
        if worst.is_none_or(|(_, e)| err > e) {
            worst = Some(((k, l), err));
        }
    }
    let (worst_pair, worst_err) = worst.unwrap_or(((0, 0), 0.0));
    let sum: f64 = measures.iter().map(|(_, pm)| pm.concurrence).sum();
    vec![
        CheckResult {
            name: "pair_concurrence_equals_weight_ratio".into(),
            passed: worst_err <= PAIR_VALUE_TOLERANCE,
            detail: format!(
                "max |C_kl - x_kl/M| = {worst_err:.3e} at {} (tolerance {PAIR_VALUE_TOLERANCE:e})",
                fmt_pair(worst_pair)
            ),
        },
        CheckResult {
            name: "concurrence_sum_is_one".into(),
            passed: (sum - 1.0).abs() <= SUM_TOLERANCE,
            detail: format!("sum C_kl = {} (tolerance {SUM_TOLERANCE:e})", round_sig12(sum)),
        },
    ]
}

/// Analyzes the family state of `spec` through the analytic pair reductions.
pub fn analyze_spec(spec: &MoleculeSpec, source_text: &str, tol: f64) -> Result<AnalysisReport> {
    let fam = FamilyState::new(spec.clone());
    let measures = pair_measures(&fam, tol)?;
    let records = build_records(&measures, Some(spec));
    let mut checks = family_checks(spec, &measures);
    checks.push(consistency_check(&measures, tol));
    Ok(AnalysisReport {
        n_qubits: spec.n_qubits(),
        global: summarize(&records, tol),
        records,
        checks,
        provenance: provenance("spec", spec.name(), source_text, tol),
    })
}

/// Analyzes an explicit state. Dense operators must fit the density cap.
pub fn analyze_state(state: &StateFile, source_text: &str, tol: f64, limits: &Limits) -> Result<AnalysisReport> {
    match state {
        StateFile::Pure(p) => limits.check_pure(p.n_qubits())?,
        StateFile::Density(d) => limits.check_density(d.n_qubits())?,
    }
    if state.n_qubits() < 2 {
        return Err(Error::Domain("pair analysis needs at least 2 qubits".into()));
    }
    let measures = pair_measures(state, tol)?;
    let records = build_records(&measures, None);
    Ok(AnalysisReport {
        n_qubits: state.n_qubits(),
        global: summarize(&records, tol),
        records,
        checks: vec![consistency_check(&measures, tol)],
        provenance: provenance("state", None, source_text, tol),
    })
}

fn provenance(source: &str, name: Option<&str>, text: &str, tol: f64) -> Provenance {
    Provenance {
        source: source.into(),
        name: name.map(str::to_string),
        input_sha256: sha256_hex(text),
        tool_version: TOOL_VERSION.into(),
        tolerances: Tolerances {
            entanglement: tol,
            ..Tolerances::DEFAULT
        },
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mismatch {
    pub pair: [usize; 2],
    pub expected_entangled: bool,
    pub concurrence: f64,
    pub ppt: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatternReport {
    pub passed: bool,
    pub n_qubits: usize,
    pub tolerance: f64,
    pub pairs_checked: usize,
    pub mismatches: Vec<Mismatch>,
    /// Pairs where the concurrence and partial-transpose verdicts disagree.
    pub inconsistencies: Vec<[usize; 2]>,
}

/// Verifies that exactly the pairs of `spec` are entangled (`C > tol`).
pub fn check_pattern(spec: &MoleculeSpec, records: &[PairRecord], tol: f64) -> Result<PatternReport> {
    let n = spec.n_qubits();
    let expected_count = n * (n - 1) / 2;
    if records.len() != expected_count {
        return Err(Error::Dimension {
            expected: expected_count,
            found: records.len(),
        });
    }
    let mut mismatches = Vec::new();
    let mut inconsistencies = Vec::new();
    for r in records {
        let [k, l] = r.pair;
        let expected = spec.contains(k, l);
        let entangled = r.concurrence > tol;
        if entangled != expected {
            mismatches.push(Mismatch {
                pair: r.pair,
                expected_entangled: expected,
                concurrence: r.concurrence,
                ppt: r.ppt,
            });
        }
        if entangled != (r.min_pt_eigenvalue < -tol) {
            inconsistencies.push(r.pair);
        }
    }
    Ok(PatternReport {
        passed: mismatches.is_empty() && inconsistencies.is_empty(),
        n_qubits: n,
        tolerance: tol,
        pairs_checked: records.len(),
        mismatches,
        inconsistencies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::molecule::{generate, GraphKind, WeightPattern};
    use crate::states;

    #[test]
    fn rounding_keeps_twelve_digits() {
        assert_eq!(round_sig12(1.0 / 3.0), 0.333333333333);
        assert_eq!(round_sig12(2.0 / 9.0 * 1e-5), 2.22222222222e-6);
        assert_eq!(round_sig12(0.0), 0.0);
        assert_eq!(round_sig12(-0.0), 0.0);
    }

    #[test]
    fn spec_report_passes_and_sums_to_one() {
        let spec = generate(GraphKind::Ring, 5, WeightPattern::Alternating { strong: 3, weak: 1 }).unwrap();
        let r = analyze_spec(&spec, &spec.to_text(), 1e-9).unwrap();
        assert!(r.passed(), "{:?}", r.checks);
        assert_eq!(r.records.len(), 10);
        assert!((r.global.concurrence_sum - 1.0).abs() < 1e-12);
        assert_eq!(r.record(2, 1).unwrap().weight.as_deref(), Some("3/11"));
        assert_eq!(r.global.max_pair.as_ref().unwrap().pair, [1, 2]);
    }

    #[test]
    fn state_report_has_no_membership() {
        let w = StateFile::from(states::w_state(4, &Limits::DEFAULT).unwrap());
        let r = analyze_state(&w, "", 1e-9, &Limits::DEFAULT).unwrap();
        assert!(r
            .records
            .iter()
            .all(|rec| rec.in_i.is_none() && (rec.concurrence - 0.5).abs() < 1e-11));
        let tight = Limits {
            max_pure_qubits: 3,
            ..Limits::DEFAULT
        };
        assert!(matches!(
            analyze_state(&w, "", 1e-9, &tight),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn detects_input_kinds() {
        assert!(matches!(detect_input("qubits 2\nbind 1 2 1").unwrap(), Input::Spec(_)));
        let state = StateFile::from(states::ghz(2, &Limits::DEFAULT).unwrap()).to_json();
        assert!(matches!(detect_input(&state).unwrap(), Input::State(_)));
        let spec = generate(GraphKind::Star, 3, WeightPattern::Uniform).unwrap();
        let report = analyze_spec(&spec, "", 1e-9).unwrap().to_json();
        assert!(matches!(detect_input(&report).unwrap(), Input::Report(_)));
        assert!(detect_input("{ not json").is_err());
    }

    #[test]
    fn pattern_mismatch_is_listed() {
        let spec = generate(GraphKind::Complete, 3, WeightPattern::Uniform).unwrap();
        let ghz = StateFile::from(states::ghz(3, &Limits::DEFAULT).unwrap());
        let r = analyze_state(&ghz, "", 1e-9, &Limits::DEFAULT).unwrap();
        let p = check_pattern(&spec, &r.records, 1e-9).unwrap();
        assert!(!p.passed);
        assert_eq!(p.mismatches.len(), 3);
        let wrong_size = generate(GraphKind::Complete, 4, WeightPattern::Uniform).unwrap();
        assert!(check_pattern(&wrong_size, &r.records, 1e-9).is_err());
    }
}
