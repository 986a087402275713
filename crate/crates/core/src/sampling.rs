//! Random-state checks of monogamy and of W-state extremality.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::measures::{concurrence, min_pair_concurrence};
use crate::qcore::reduced_pair_from_pure;
use crate::rng::SplitMix64;
use crate::states::random_pure_from;

/// Slack allowed above each bound before a sample counts as a violation.
pub const VIOLATION_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleTest {
    /// `C_12^2 + C_13^2 <= 1` on three qubits.
    Monogamy3,
    /// `sum_k C_1k^2 <= 1` on `n` qubits.
    #[serde(rename = "monogamyN")]
    MonogamyN,
    /// `min(C_12, C_13, C_23) <= 2/3` on three qubits.
    Wmax,
}

impl FromStr for SampleTest {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "monogamy3" => Ok(SampleTest::Monogamy3),
            "monogamyN" | "monogamyn" => Ok(SampleTest::MonogamyN),
            "wmax" => Ok(SampleTest::Wmax),
            other => Err(Error::Domain(format!("unknown sampling test {other:?}"))),
        }
    }
}

impl fmt::Display for SampleTest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SampleTest::Monogamy3 => "monogamy3",
            SampleTest::MonogamyN => "monogamyN",
            SampleTest::Wmax => "wmax",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleReport {
    pub test: SampleTest,
    pub n_qubits: usize,
    pub count: usize,
    pub seed: u64,
    pub statistic: String,
    pub bound: f64,
    pub max_statistic: f64,
    /// Sample index attaining the maximum; regenerate with `SplitMix64::stream(seed, index)`.
    pub argmax: usize,
    pub violations: usize,
}

impl SampleReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

fn first_qubit_squares(n: usize, seed: u64, index: usize, limits: &Limits) -> Result<f64> {
    let psi = random_pure_from(n, &mut SplitMix64::stream(seed, index as u64), limits)?;
    let mut sum = 0.0;
    for k in 2..=n {
        let c = concurrence(&reduced_pair_from_pure(&psi, 1, k)?)?;
        sum += c * c;
    }
    Ok(sum)
}

/// Runs `count` Haar-random samples; sample `i` uses the stream `(seed, i)`, so results do
/// not depend on how the work is partitioned.
pub fn run_sample(test: SampleTest, n: usize, count: usize, seed: u64, limits: &Limits) -> Result<SampleReport> {
    if count == 0 {
        return Err(Error::Domain("sample count must be at least 1".into()));
    }
    let n = match test {
        SampleTest::Monogamy3 | SampleTest::Wmax => 3,
        SampleTest::MonogamyN => {
            if n < 3 {
                return Err(Error::Domain(format!("monogamyN needs n >= 3, got {n}")));
            }
            n
        }
    };
    limits.check_pure(n)?;
    let (statistic, bound) = match test {
        SampleTest::Monogamy3 => ("C12^2 + C13^2", 1.0),
        SampleTest::MonogamyN => ("sum_k C1k^2", 1.0),
        SampleTest::Wmax => ("min(C12, C13, C23)", 2.0 / 3.0),
    };
    let values: Vec<f64> = (0..count)
        .into_par_iter()
        .map(|i| match test {
            SampleTest::Monogamy3 | SampleTest::MonogamyN => first_qubit_squares(n, seed, i, limits),
            SampleTest::Wmax => {
                let psi = random_pure_from(3, &mut SplitMix64::stream(seed, i as u64), limits)?;
                min_pair_concurrence(&psi)
            }
        })
        .collect::<Result<_>>()?;
    let (argmax, max_statistic) =
        values.iter().copied().enumerate().fold(
            (0, f64::NEG_INFINITY),
            |best, (i, v)| if v > best.1 { (i, v) } else { best },
        );
    let violations = values.iter().filter(|&&v| v > bound + VIOLATION_SLACK).count();
    Ok(SampleReport {
        test,
        n_qubits: n,
        count,
        seed,
        statistic: statistic.into(),
        bound,
        max_statistic,
        argmax,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_are_reproducible() {
        let a = run_sample(SampleTest::Monogamy3, 3, 200, 5, &Limits::DEFAULT).unwrap();
        let b = run_sample(SampleTest::Monogamy3, 3, 200, 5, &Limits::DEFAULT).unwrap();
        assert_eq!(a, b);
        assert!(a.passed());
        assert!(a.max_statistic <= 1.0 + VIOLATION_SLACK);
    }

    #[test]
    fn argmax_regenerates_the_extreme_sample() {
        let lim = Limits::DEFAULT;
        let r = run_sample(SampleTest::MonogamyN, 4, 50, 8, &lim).unwrap();
        assert_eq!(first_qubit_squares(4, 8, r.argmax, &lim).unwrap(), r.max_statistic);
    }

    #[test]
    fn input_errors() {
        assert!(run_sample(SampleTest::Wmax, 3, 0, 1, &Limits::DEFAULT).is_err());
        assert!(run_sample(SampleTest::MonogamyN, 2, 10, 1, &Limits::DEFAULT).is_err());
        assert!(matches!(
            run_sample(SampleTest::MonogamyN, 30, 1, 1, &Limits::DEFAULT),
            Err(Error::Capacity { .. })
        ));
        assert_eq!("monogamyN".parse::<SampleTest>().unwrap(), SampleTest::MonogamyN);
    }
}
