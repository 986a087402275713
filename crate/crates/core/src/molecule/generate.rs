use std::fmt;
use std::str::FromStr;

use super::spec::{MoleculeSpec, Pair, Weight};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    /// Closed ring `(i, i+1)` with `(1, n)` closing it.
    Ring,
    /// Qubit 1 bound to every other qubit.
    Star,
    /// Every pair bound.
    Complete,
    /// Every pair whose indices share parity.
    EvenOdd,
    /// Open path `(i, i+1)`.
    Chain,
}

impl FromStr for GraphKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "ring" => GraphKind::Ring,
            "star" => GraphKind::Star,
            "complete" => GraphKind::Complete,
            "even_odd" | "even-odd" => GraphKind::EvenOdd,
            "chain" => GraphKind::Chain,
            other => return Err(Error::Domain(format!("unknown graph kind {other:?}"))),
        })
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphKind::Ring => "ring",
            GraphKind::Star => "star",
            GraphKind::Complete => "complete",
            GraphKind::EvenOdd => "even_odd",
            GraphKind::Chain => "chain",
        })
    }
}

/// Relative integer weights; generated specs are always normalized so `M = 1`, with the
/// weights written as exact fractions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WeightPattern {
    #[default]
    Uniform,
    /// For rings and chains: edge `(i, i+1)` gets `strong` when `i` is odd, `weak`
    /// otherwise (the closing ring edge counts as position `n`).
    Alternating { strong: u32, weak: u32 },
}

fn edges_of(kind: GraphKind, n: usize) -> Result<Vec<Pair>> {
    let min = if kind == GraphKind::Ring || kind == GraphKind::EvenOdd {
        3
    } else {
        2
    };
    if n < min {
        return Err(Error::Domain(format!("{kind} molecule needs n >= {min}, got {n}")));
    }
    Ok(match kind {
        GraphKind::Ring => (1..n).map(|i| (i, i + 1)).chain(std::iter::once((1, n))).collect(),
        GraphKind::Chain => (1..n).map(|i| (i, i + 1)).collect(),
        GraphKind::Star => (2..=n).map(|k| (1, k)).collect(),
        GraphKind::Complete => (1..=n).flat_map(|k| ((k + 1)..=n).map(move |l| (k, l))).collect(),
        GraphKind::EvenOdd => (1..=n)
            .flat_map(|k| ((k + 1)..=n).filter(move |l| (l - k) % 2 == 0).map(move |l| (k, l)))
            .collect(),
    })
}

/// Builds one of the standard binding graphs on `n` qubits.
pub fn generate(kind: GraphKind, n: usize, pattern: WeightPattern) -> Result<MoleculeSpec> {
    let pairs = edges_of(kind, n)?;
    let relative: Vec<u64> = match pattern {
        WeightPattern::Uniform => vec![1; pairs.len()],
        WeightPattern::Alternating { strong, weak } => {
            if !matches!(kind, GraphKind::Ring | GraphKind::Chain) {
                return Err(Error::Domain(format!(
                    "alternating weights apply to rings and chains, not {kind}"
                )));
            }
            if strong == 0 || weak == 0 {
                return Err(Error::Domain("alternating weights must be positive".into()));
            }
            pairs
                .iter()
                .map(|&(k, l)| {
                    let position = if l == k + 1 { k } else { n };
                    u64::from(if position % 2 == 1 { strong } else { weak })
                })
                .collect()
        }
    };
    let total: u64 = relative.iter().sum();
    let edges = pairs.into_iter().zip(relative).map(|((k, l), r)| {
        let value = r as f64 / total as f64;
        (k, l, Weight::with_text(value, format!("{r}/{total}")))
    });
    MoleculeSpec::new(n, edges, Some(format!("{kind}{n}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_six() {
        let s = generate(GraphKind::Star, 6, WeightPattern::Uniform).unwrap();
        assert_eq!(s.edge_count(), 5);
        assert!(s.edges().all(|((k, _), w)| k == 1 && w.text == "1/5" && w.value == 0.2));
    }

    #[test]
    fn complete_six() {
        let s = generate(GraphKind::Complete, 6, WeightPattern::Uniform).unwrap();
        assert_eq!(s.edge_count(), 15);
        assert!(s.edges().all(|(_, w)| w.text == "1/15"));
    }

    #[test]
    fn even_odd_six() {
        let s = generate(GraphKind::EvenOdd, 6, WeightPattern::Uniform).unwrap();
        let pairs: Vec<_> = s.edges().map(|(p, _)| p).collect();
        assert_eq!(pairs, vec![(1, 3), (1, 5), (2, 4), (2, 6), (3, 5), (4, 6)]);
        assert!(s.edges().all(|(_, w)| w.text == "1/6"));
    }

    #[test]
    fn alternating_ring_matches_strong_weak_layout() {
        let s = generate(GraphKind::Ring, 6, WeightPattern::Alternating { strong: 2, weak: 1 }).unwrap();
        for (p, text) in [
            ((1, 2), "2/9"),
            ((2, 3), "1/9"),
            ((3, 4), "2/9"),
            ((4, 5), "1/9"),
            ((5, 6), "2/9"),
            ((1, 6), "1/9"),
        ] {
            assert_eq!(s.weight(p.0, p.1).unwrap().text, text, "{p:?}");
        }
    }

    #[test]
    fn chain_and_size_limits() {
        assert_eq!(
            generate(GraphKind::Chain, 2, WeightPattern::Uniform)
                .unwrap()
                .edge_count(),
            1
        );
        assert!(generate(GraphKind::Ring, 2, WeightPattern::Uniform).is_err());
        assert!(generate(GraphKind::EvenOdd, 2, WeightPattern::Uniform).is_err());
        assert!(generate(GraphKind::Star, 1, WeightPattern::Uniform).is_err());
        assert!(generate(GraphKind::Star, 4, WeightPattern::Alternating { strong: 2, weak: 1 }).is_err());
        assert_eq!("even-odd".parse::<GraphKind>().unwrap(), GraphKind::EvenOdd);
    }
}
