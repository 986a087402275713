//! Family-state values against the best known states and the fidelity bound, for one
//! qubit bound equally to `n - 1` others (`star`) and for all pairs bound equally
//! (`all_equal`). Both sides of every comparison are computed from states.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::measures::{cloning_bound, concurrence, fidelity_bound, fully_entangled_fraction, teleport_fidelity};
use crate::molecule::{generate, FamilyState, GraphKind, WeightPattern};
use crate::qcore::reduced_pair_from_pure;
use crate::states::{star_pure_state, w_state};

/// Agreement required between a computed value and its closed form.
pub const BOUND_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    Star,
    AllEqual,
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "star" => Ok(Scenario::Star),
            "all_equal" | "all-equal" => Ok(Scenario::AllEqual),
            other => Err(Error::Domain(format!("unknown scenario {other:?}"))),
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scenario::Star => "star",
            Scenario::AllEqual => "all_equal",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Equal,
    AtMost,
    Below,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub quantity: String,
    pub computed: f64,
    pub relation: Relation,
    pub reference: f64,
    pub reference_formula: String,
    pub passed: bool,
}

impl BoundEntry {
    fn new(quantity: &str, computed: f64, relation: Relation, reference: f64, formula: &str) -> Self {
        let passed = match relation {
            Relation::Equal => (computed - reference).abs() <= BOUND_TOLERANCE,
            Relation::AtMost => computed <= reference + BOUND_TOLERANCE,
            Relation::Below => computed < reference - BOUND_TOLERANCE,
        };
        BoundEntry {
            quantity: quantity.into(),
            computed,
            relation,
            reference,
            reference_formula: formula.into(),
            passed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub scenario: Scenario,
    pub n: usize,
    pub entries: Vec<BoundEntry>,
    pub notes: Vec<String>,
}

impl BoundsReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn entry(&self, quantity: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.quantity == quantity)
    }
}

/// Star pure state `a|1>|0..0> + b|0>|N-2,1>` on the normalized curve
/// `a = cos t`, `b = sin t / sqrt(n-1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StarPoint {
    pub a: f64,
    pub b: f64,
    pub fef: f64,
}

fn star_pair_fef(n: usize, a: f64, b: f64, limits: &Limits) -> Result<f64> {
    let psi = star_pure_state(n, a, b, limits)?;
    fully_entangled_fraction(&reduced_pair_from_pure(&psi, 1, 2)?)
}

fn star_at(n: usize, t: f64, limits: &Limits) -> Result<StarPoint> {
    let (a, b) = (t.cos(), t.sin() / ((n - 1) as f64).sqrt());
    Ok(StarPoint {
        a,
        b,
        fef: star_pair_fef(n, a, b, limits)?,
    })
}

/// Locates the star pure state with the largest pair fidelity by a uniform scan of `t`
/// over `[0, pi/2]` followed by golden-section refinement around the best grid point.
pub fn best_star_fidelity(n: usize, grid: usize, limits: &Limits) -> Result<StarPoint> {
    if n < 3 || grid < 3 {
        return Err(Error::Domain("need n >= 3 and at least 3 grid points".into()));
    }
    let h = std::f64::consts::FRAC_PI_2 / (grid - 1) as f64;
    let mut best = (0usize, f64::NEG_INFINITY);
    for i in 0..grid {
        let f = star_at(n, i as f64 * h, limits)?.fef;
        if f > best.1 {
            best = (i, f);
        }
    }
    let (mut lo, mut hi) = (
        (best.0 as f64 - 1.0).max(0.0) * h,
        ((best.0 + 1).min(grid - 1)) as f64 * h,
    );
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let mut f1 = star_at(n, x1, limits)?.fef;
    let mut f2 = star_at(n, x2, limits)?.fef;
    while hi - lo > 1e-10 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = star_at(n, x2, limits)?.fef;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = star_at(n, x1, limits)?.fef;
        }
    }
    star_at(n, 0.5 * (lo + hi), limits)
}

/// Computes the comparison table for `scenario` on `n >= 3` qubits.
pub fn bounds_report(n: usize, scenario: Scenario, limits: &Limits) -> Result<BoundsReport> {
    if n < 3 {
        return Err(Error::Domain(format!("bounds need n >= 3, got {n}")));
    }
    let nf = n as f64;
    let m = nf - 1.0;
    match scenario {
        Scenario::Star => {
            let fam = FamilyState::new(generate(GraphKind::Star, n, WeightPattern::Uniform)?);
            let fam_pair = fam.analytic_pair_reduction(1, 2)?;
            let c_family = concurrence(&fam_pair)?;
            let f_family = fully_entangled_fraction(&fam_pair)?;

            let (a_c, b_c) = (std::f64::consts::FRAC_1_SQRT_2, 1.0 / (2.0 * m).sqrt());
            let c_state = star_pure_state(n, a_c, b_c, limits)?;
            let c_pair = reduced_pair_from_pure(&c_state, 1, 2)?;
            let c_max = concurrence(&c_pair)?;
            let f_of_c_max = fully_entangled_fraction(&c_pair)?;

            let (a_f, b_f) = ((m / nf).sqrt(), 1.0 / (nf * m).sqrt());
            let f_best = star_pair_fef(n, a_f, b_f, limits)?;
            let f_bound = fidelity_bound(n)?;

            let entries = vec![
                BoundEntry::new("concurrence_family", c_family, Relation::Equal, 1.0 / m, "1/(N-1)"),
                BoundEntry::new("concurrence_max", c_max, Relation::Equal, 1.0 / m.sqrt(), "1/sqrt(N-1)"),
                BoundEntry::new(
                    "monogamy_at_max",
                    m * c_max * c_max,
                    Relation::AtMost,
                    1.0,
                    "sum_k C_1k^2 <= 1",
                ),
                BoundEntry::new(
                    "fef_family",
                    f_family,
                    Relation::Equal,
                    (2.0 + nf) / (4.0 * m),
                    "(2+N)/(4(N-1))",
                ),
                BoundEntry::new(
                    "fef_concurrence_max_state",
                    f_of_c_max,
                    Relation::AtMost,
                    f_bound,
                    "1/2 + 1/(2(N-1))",
                ),
                BoundEntry::new("fef_best_known", f_best, Relation::Equal, f_bound, "1/2 + 1/(2(N-1))"),
                BoundEntry::new(
                    "teleport_fidelity_best",
                    teleport_fidelity(f_best.min(1.0))?,
                    Relation::Equal,
                    cloning_bound(n)?,
                    "(2(N-1)+1)/(3(N-1))",
                ),
            ];
            let literal = 1.0 / (nf * m) + m * (m / nf);
            let notes = vec![
                format!("concurrence-maximal state: a = 1/sqrt(2) = {a_c}, b = 1/sqrt(2(N-1)) = {b_c}"),
                format!("fidelity-optimal state: a = sqrt((N-1)/N) = {a_f}, b = 1/sqrt(N(N-1)) = {b_f}"),
                format!(
                    "the assignment a = 1/sqrt(N(N-1)), b = sqrt((N-1)/N) gives a^2 + (N-1) b^2 = {literal} and is not normalized"
                ),
            ];
            Ok(BoundsReport {
                scenario,
                n,
                entries,
                notes,
            })
        }
        Scenario::AllEqual => {
            let fam = FamilyState::new(generate(GraphKind::Complete, n, WeightPattern::Uniform)?);
            let c_family = concurrence(&fam.analytic_pair_reduction(1, 2)?)?;
            let w = w_state(n, limits)?;
            let c_w = concurrence(&reduced_pair_from_pure(&w, 1, 2)?)?;
            let entries = vec![
                BoundEntry::new(
                    "concurrence_family",
                    c_family,
                    Relation::Equal,
                    2.0 / (nf * m),
                    "2/(N(N-1))",
                ),
                BoundEntry::new("concurrence_w", c_w, Relation::Equal, 2.0 / nf, "2/N"),
                BoundEntry::new("family_below_w", c_family, Relation::Below, c_w, "C(W_N)"),
            ];
            Ok(BoundsReport {
                scenario,
                n,
                entries,
                notes: vec!["optimality of 2/N for all-pairs-equal configurations is not established".into()],
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_three() {
        let r = bounds_report(3, Scenario::Star, &Limits::DEFAULT).unwrap();
        assert!(r.passed(), "{:#?}", r.entries);
        assert!((r.entry("concurrence_family").unwrap().computed - 0.5).abs() < 1e-12);
        assert!((r.entry("concurrence_max").unwrap().computed - 0.5f64.sqrt()).abs() < 1e-12);
        assert_eq!(r.entry("fef_best_known").unwrap().reference, 0.75);
    }

    #[test]
    fn all_equal_three() {
        let r = bounds_report(3, Scenario::AllEqual, &Limits::DEFAULT).unwrap();
        assert!(r.passed());
        assert!((r.entry("concurrence_family").unwrap().computed - 1.0 / 3.0).abs() < 1e-12);
        assert!((r.entry("concurrence_w").unwrap().computed - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn domain_errors() {
        assert!(bounds_report(2, Scenario::Star, &Limits::DEFAULT).is_err());
        assert!("diamond".parse::<Scenario>().is_err());
        assert!(best_star_fidelity(2, 10, &Limits::DEFAULT).is_err());
    }
}
