//! `entmol` command-line front end. [`run`] is the whole program minus process exit, so
//! it can be driven from tests.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand};

use crate::analysis::{analyze_spec, analyze_state, check_pattern, detect_input, AnalysisReport, Input, PatternReport};
use crate::bounds::{bounds_report, BoundsReport, Scenario};
use crate::config::Limits;
use crate::dot::render_dot;
use crate::error::Error;
use crate::molecule::{dense_family_state, FamilyState, MoleculeSpec};
use crate::qcore::StateFile;
use crate::sampling::{run_sample, SampleReport, SampleTest};
use crate::states;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_CAPACITY: i32 = 4;

/// Inputs generated by rounding (e.g. `--a 0.70710678`) are accepted within this slack of
/// `a^2 + (n-1) b^2 = 1` and renormalized.
const CLI_STAR_SLACK: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(name = "entmol", version, about = "Build and verify entanglement molecules")]
struct Cli {
    #[command(flatten)]
    common: CommonArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Concurrence above this counts as entangled.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Seed for sampling commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Override both qubit caps (also settable through ENTMOL_MAX_QUBITS).
    #[arg(long, global = true)]
    max_qubits: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a named state and write it as a JSON state file.
    State(StateArgs),
    /// Per-pair concurrence, entanglement of formation, fidelity and PPT for a spec or state.
    Analyze { input: PathBuf },
    /// Check that exactly the pairs bound in SPEC are entangled.
    Check {
        spec: PathBuf,
        /// State or report to check; defaults to the molecule's own family state.
        #[arg(long)]
        against: Option<PathBuf>,
    },
    /// Compare family-state values with the best known states and bounds.
    Bounds {
        #[arg(long)]
        n: usize,
        /// `star` or `all_equal`.
        #[arg(long, default_value = "star")]
        scenario: String,
    },
    /// Render the pair concurrences as a Graphviz graph.
    Dot { input: PathBuf },
    /// Random-state monogamy and W-extremality checks.
    Sample {
        /// `monogamy3`, `monogamyN` or `wmax`.
        #[arg(long)]
        test: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        count: usize,
    },
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("kind").required(true).args(["ghz", "w", "star", "bell_embed", "family_dense"])))]
struct StateArgs {
    /// GHZ state on N qubits.
    #[arg(long, value_name = "N")]
    ghz: Option<usize>,
    /// W state on N qubits.
    #[arg(long, value_name = "N")]
    w: Option<usize>,
    /// Star pure state a|1>|0..0> + b|0>|N-2,1> on N qubits.
    #[arg(long, value_name = "N")]
    star: Option<usize>,
    /// Embedded Bell pair on N qubits (needs --pair I J).
    #[arg(long, value_name = "N")]
    bell_embed: Option<usize>,
    /// Dense family state of a molecule spec.
    #[arg(long, value_name = "SPEC")]
    family_dense: Option<PathBuf>,
    /// Star amplitude on |1>|0..0> [default: 1/sqrt(2)].
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    /// Star amplitude on each single-excitation term [default: 1/sqrt(2(N-1))].
    #[arg(long, allow_negative_numbers = true)]
    b: Option<f64>,
    /// Qubits of the embedded Bell pair (1-based).
    #[arg(long, num_args = 2, value_names = ["I", "J"])]
    pair: Option<Vec<usize>>,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Capacity { .. } => EXIT_CAPACITY,
            Error::Io(_) => EXIT_IO,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

struct Output {
    body: String,
    /// Printed to stdout when the body goes to a file, to stderr otherwise.
    summary: Option<String>,
    code: i32,
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_IO,
        message: format!("cannot read {}: {e}", path.display()),
    })
}

fn read_input(path: &Path) -> Result<(String, Input), Failure> {
    let text = read(path)?;
    let input = detect_input(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    Ok((text, input))
}

/// Entry point; returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let written = match &cli.common.out {
                Some(path) => {
                    std::fs::write(path, &out.body).map_err(|e| format!("cannot write {}: {e}", path.display()))
                }
                None => stdout.write_all(out.body.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(message) = written {
                let _ = writeln!(stderr, "error: {message}");
                return EXIT_IO;
            }
            if let Some(summary) = out.summary {
                let sink: &mut dyn Write = if cli.common.out.is_some() { stdout } else { stderr };
                let _ = writeln!(sink, "{summary}");
            }
            out.code
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn limits(common: &CommonArgs) -> Result<Limits, Failure> {
    match common.max_qubits {
        Some(n) => Ok(Limits::uniform(n)),
        None => Ok(Limits::from_env()?),
    }
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    let common = &cli.common;
    let limits = limits(common)?;
    if !(common.tol >= 0.0 && common.tol.is_finite()) {
        return Err(input_error("--tol must be a non-negative number"));
    }
    let structured = common.json || common.out.is_some();
    match &cli.command {
        Command::State(args) => cmd_state(args, &limits),
        Command::Analyze { input } => cmd_analyze(input, common.tol, structured, &limits),
        Command::Check { spec, against } => cmd_check(spec, against.as_deref(), common.tol, structured, &limits),
        Command::Bounds { n, scenario } => {
            let scenario: Scenario = scenario.parse()?;
            let report = bounds_report(*n, scenario, &limits)?;
            Ok(Output {
                code: if report.passed() { EXIT_OK } else { EXIT_CHECK_FAILED },
                body: if structured {
                    to_json(&report)
                } else {
                    bounds_text(&report)
                },
                summary: None,
            })
        }
        Command::Dot { input } => cmd_dot(input, common.tol, &limits),
        Command::Sample { test, n, count } => {
            let test: SampleTest = test.parse()?;
            let report = run_sample(test, *n, *count, common.seed, &limits)?;
            Ok(Output {
                code: if report.passed() { EXIT_OK } else { EXIT_CHECK_FAILED },
                body: if structured {
                    to_json(&report)
                } else {
                    sample_text(&report)
                },
                summary: None,
            })
        }
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

fn cmd_state(args: &StateArgs, limits: &Limits) -> Result<Output, Failure> {
    let (kind, file): (&str, StateFile) = if let Some(n) = args.ghz {
        ("ghz", states::ghz(n, limits)?.into())
    } else if let Some(n) = args.w {
        ("w", states::w_state(n, limits)?.into())
    } else if let Some(n) = args.star {
        if n < 3 {
            return Err(input_error("--star needs n >= 3"));
        }
        let m = (n - 1) as f64;
        let a = args.a.unwrap_or(std::f64::consts::FRAC_1_SQRT_2);
        let b = args.b.unwrap_or(1.0 / (2.0 * m).sqrt());
        let norm = a * a + m * b * b;
        let close = (norm - 1.0).abs() <= CLI_STAR_SLACK;
        if !close {
            return Err(input_error(format!(
                "star parameters give a^2 + (n-1) b^2 = {norm}, expected 1"
            )));
        }
        let scale = norm.sqrt();
        ("star", states::star_pure_state(n, a / scale, b / scale, limits)?.into())
    } else if let Some(n) = args.bell_embed {
        let Some(pair) = args.pair.as_deref() else {
            return Err(input_error("--bell-embed needs --pair I J"));
        };
        ("bell-embed", states::embedded_bell(n, pair[0], pair[1], limits)?.into())
    } else if let Some(path) = &args.family_dense {
        let (_, input) = read_input(path)?;
        let Input::Spec(spec) = input else {
            return Err(input_error(format!("{} is not a molecule spec", path.display())));
        };
        (
            "family-dense",
            dense_family_state(&FamilyState::new(spec), limits)?.into(),
        )
    } else {
        unreachable!("clap enforces one state kind");
    };
    let summary = match &file {
        StateFile::Pure(p) => format!("kind={kind} n_qubits={} norm={}", p.n_qubits(), p.norm_sqr().sqrt()),
        StateFile::Density(d) => format!("kind={kind} n_qubits={} trace={}", d.n_qubits(), d.trace()),
    };
    let mut body = file.to_json();
    body.push('\n');
    Ok(Output {
        body,
        summary: Some(summary),
        code: EXIT_OK,
    })
}

fn analyze_input(text: &str, input: Input, tol: f64, limits: &Limits) -> Result<AnalysisReport, Failure> {
    match input {
        Input::Spec(spec) => Ok(analyze_spec(&spec, text, tol)?),
        Input::State(state) => Ok(analyze_state(&state, text, tol, limits)?),
        Input::Report(report) => Ok(*report),
    }
}

fn cmd_analyze(path: &Path, tol: f64, structured: bool, limits: &Limits) -> Result<Output, Failure> {
    let (text, input) = read_input(path)?;
    if matches!(input, Input::Report(_)) {
        return Err(input_error(
            "analyze expects a molecule spec or a state file, not a report",
        ));
    }
    let report = analyze_input(&text, input, tol, limits)?;
    Ok(Output {
        code: if report.passed() { EXIT_OK } else { EXIT_CHECK_FAILED },
        body: if structured {
            to_json(&report)
        } else {
            report_text(&report)
        },
        summary: None,
    })
}

fn cmd_check(
    spec_path: &Path,
    against: Option<&Path>,
    tol: f64,
    structured: bool,
    limits: &Limits,
) -> Result<Output, Failure> {
    let (spec_text, input) = read_input(spec_path)?;
    let Input::Spec(spec) = input else {
        return Err(input_error(format!("{} is not a molecule spec", spec_path.display())));
    };
    let report = match against {
        None => analyze_spec(&spec, &spec_text, tol)?,
        Some(path) => {
            let (text, input) = read_input(path)?;
            if let Input::Spec(_) = input {
                return Err(input_error("--against expects a state file or a report"));
            }
            analyze_input(&text, input, tol, limits)?
        }
    };
    if report.n_qubits != spec.n_qubits() {
        return Err(input_error(format!(
            "spec has {} qubits but the checked input has {}",
            spec.n_qubits(),
            report.n_qubits
        )));
    }
    let pattern = check_pattern(&spec, &report.records, tol)?;
    Ok(Output {
        code: if pattern.passed { EXIT_OK } else { EXIT_CHECK_FAILED },
        body: if structured {
            to_json(&pattern)
        } else {
            pattern_text(&spec, &pattern)
        },
        summary: None,
    })
}

fn cmd_dot(path: &Path, tol: f64, limits: &Limits) -> Result<Output, Failure> {
    let (text, input) = read_input(path)?;
    let name = match &input {
        Input::Spec(spec) => spec.name().unwrap_or("molecule").to_string(),
        Input::State(_) => "state".to_string(),
        Input::Report(r) => r.provenance.name.clone().unwrap_or_else(|| r.provenance.source.clone()),
    };
    let report = analyze_input(&text, input, tol, limits)?;
    let pairs: Vec<_> = report
        .records
        .iter()
        .map(|r| ((r.pair[0], r.pair[1]), r.concurrence))
        .collect();
    Ok(Output {
        body: render_dot(&name, report.n_qubits, &pairs, tol),
        summary: None,
        code: EXIT_OK,
    })
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn report_text(r: &AnalysisReport) -> String {
    let mut s = String::new();
    let name = r.provenance.name.as_deref().unwrap_or("-");
    writeln!(s, "source: {} ({name}), {} qubits", r.provenance.source, r.n_qubits).unwrap();
    writeln!(
        s,
        "{:<10} {:>16} {:>16} {:>16} {:>16} {:>5} {:>5}  weight",
        "pair", "concurrence", "eof", "fef", "teleport", "ppt", "in_I"
    )
    .unwrap();
    for rec in &r.records {
        let in_i = rec.in_i.map_or("-", |b| if b { "yes" } else { "no" });
        writeln!(
            s,
            "{:<10} {:>16} {:>16} {:>16} {:>16} {:>5} {:>5}  {}",
            format!("({}, {})", rec.pair[0], rec.pair[1]),
            rec.concurrence,
            rec.eof,
            rec.fef,
            rec.teleport_fidelity,
            rec.ppt,
            in_i,
            rec.weight.as_deref().unwrap_or("-")
        )
        .unwrap();
    }
    writeln!(s, "concurrence sum: {}", r.global.concurrence_sum).unwrap();
    if let Some(p) = &r.global.max_pair {
        writeln!(
            s,
            "strongest binding: ({}, {}) C = {}",
            p.pair[0], p.pair[1], p.concurrence
        )
        .unwrap();
    }
    if let Some(p) = &r.global.min_positive_pair {
        writeln!(
            s,
            "weakest binding: ({}, {}) C = {}",
            p.pair[0], p.pair[1], p.concurrence
        )
        .unwrap();
    }
    for c in &r.checks {
        writeln!(s, "check {}: {} ({})", c.name, pass(c.passed), c.detail).unwrap();
    }
    s
}

fn pattern_text(spec: &MoleculeSpec, p: &PatternReport) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "checked {} pairs against {} bound pairs (tolerance {:e})",
        p.pairs_checked,
        spec.edge_count(),
        p.tolerance
    )
    .unwrap();
    for m in &p.mismatches {
        let verdict = if m.expected_entangled {
            "expected entangled"
        } else {
            "expected separable"
        };
        writeln!(
            s,
            "mismatch ({}, {}): {verdict}, C = {}, ppt = {}",
            m.pair[0], m.pair[1], m.concurrence, m.ppt
        )
        .unwrap();
    }
    for pair in &p.inconsistencies {
        writeln!(s, "inconsistent verdicts on ({}, {})", pair[0], pair[1]).unwrap();
    }
    writeln!(s, "result: {}", pass(p.passed)).unwrap();
    s
}

fn bounds_text(r: &BoundsReport) -> String {
    let mut s = String::new();
    writeln!(s, "scenario {} with N = {}", r.scenario, r.n).unwrap();
    for e in &r.entries {
        let rel = match e.relation {
            crate::bounds::Relation::Equal => "=",
            crate::bounds::Relation::AtMost => "<=",
            crate::bounds::Relation::Below => "<",
        };
        writeln!(
            s,
            "{:<28} {:>16.12} {rel:>2} {:<16.12} [{}] {}",
            e.quantity,
            e.computed,
            e.reference,
            e.reference_formula,
            pass(e.passed)
        )
        .unwrap();
    }
    for note in &r.notes {
        writeln!(s, "note: {note}").unwrap();
    }
    s
}

fn sample_text(r: &SampleReport) -> String {
    format!(
        "test {} on {} qubits: {} samples, seed {}\nmax {} = {:.12} (sample {}), bound {:.12}\nviolations: {}\n",
        r.test, r.n_qubits, r.count, r.seed, r.statistic, r.max_statistic, r.argmax, r.bound, r.violations
    )
}
