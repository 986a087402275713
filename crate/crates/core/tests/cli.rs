use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use entmol::analysis::{AnalysisReport, PatternReport};
use entmol::qcore::StateFile;
use entmol::sampling::SampleReport;
use tempfile::TempDir;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(format!("{name}.mol"))
}

fn entmol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_entmol"))
        .args(args)
        .env_remove("ENTMOL_MAX_QUBITS")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn state_file(args: &[&str]) -> StateFile {
    let o = entmol(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    StateFile::from_json(&stdout(&o)).unwrap()
}

#[test]
fn state_w3_has_three_equal_amplitudes() {
    let StateFile::Pure(psi) = state_file(&["state", "--w", "3"]) else {
        panic!("expected pure")
    };
    let nonzero: Vec<_> = psi.amplitudes().iter().filter(|a| a.norm() > 1e-15).collect();
    assert_eq!(nonzero.len(), 3);
    for a in nonzero {
        assert!((a.re - 1.0 / 3f64.sqrt()).abs() < 1e-15);
    }
}

#[test]
fn state_ghz4_has_two_amplitudes() {
    let StateFile::Pure(psi) = state_file(&["state", "--ghz", "4"]) else {
        panic!("expected pure")
    };
    assert_eq!(psi.amplitudes().iter().filter(|a| a.norm() > 0.0).count(), 2);
}

#[test]
fn state_star_accepts_rounded_parameters() {
    let StateFile::Pure(psi) = state_file(&["state", "--star", "3", "--a", "0.70710678", "--b", "0.5"]) else {
        panic!("expected pure")
    };
    assert!((psi.norm_sqr() - 1.0).abs() < 1e-14);
    let o = entmol(&["state", "--star", "3", "--a", "0.9", "--b", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn state_summary_goes_to_stdout_with_out_flag() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("bell.json");
    let o = entmol(&[
        "state",
        "--bell-embed",
        "4",
        "--pair",
        "2",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("n_qubits=4"));
    assert!(StateFile::from_json(&std::fs::read_to_string(out).unwrap()).is_ok());
}

#[test]
fn family_dense_state_matches_spec_analysis() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("ring.json");
    let ring = fixture("ring6");
    let o = entmol(&[
        "state",
        "--family-dense",
        ring.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let dense: AnalysisReport =
        serde_json::from_str(&stdout(&entmol(&["analyze", out.to_str().unwrap(), "--json"]))).unwrap();
    let spec: AnalysisReport =
        serde_json::from_str(&stdout(&entmol(&["analyze", ring.to_str().unwrap(), "--json"]))).unwrap();
    for (a, b) in dense.records.iter().zip(&spec.records) {
        assert_eq!(a.pair, b.pair);
        assert!((a.concurrence - b.concurrence).abs() < 1e-11);
    }
}

#[test]
fn analyze_ring_reports_weight_ratios() {
    let o = entmol(&["analyze", fixture("ring6").to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let report: AnalysisReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report.records.len(), 15);
    assert!((report.record(1, 2).unwrap().concurrence - 2.0 / 9.0).abs() < 1e-11);
    assert!((report.record(2, 3).unwrap().concurrence - 1.0 / 9.0).abs() < 1e-11);
    assert_eq!(report.record(1, 3).unwrap().concurrence, 0.0);
    assert_eq!(report.record(1, 2).unwrap().weight.as_deref(), Some("2/9"));
    assert!(report.passed());
    let sum: f64 = report.records.iter().map(|r| r.concurrence).sum();
    assert!((sum - report.global.concurrence_sum).abs() < 1e-12);
}

#[test]
fn analyze_w6_state() {
    let dir = TempDir::new().unwrap();
    let w6 = dir.path().join("w6.json");
    entmol(&["state", "--w", "6", "--out", w6.to_str().unwrap()]);
    let report: AnalysisReport =
        serde_json::from_str(&stdout(&entmol(&["analyze", w6.to_str().unwrap(), "--json"]))).unwrap();
    assert_eq!(report.records.len(), 15);
    assert!(report.records.iter().all(|r| (r.concurrence - 1.0 / 3.0).abs() < 1e-11));
}

#[test]
fn analyze_star6_fidelity() {
    let report: AnalysisReport = serde_json::from_str(&stdout(&entmol(&[
        "analyze",
        fixture("star6").to_str().unwrap(),
        "--json",
    ])))
    .unwrap();
    for l in 2..=6 {
        assert!((report.record(1, l).unwrap().fef - 0.4).abs() < 1e-11);
    }
}

#[test]
fn reports_are_byte_identical_and_round_trip() {
    let ring = fixture("ring6");
    let a = stdout(&entmol(&["analyze", ring.to_str().unwrap(), "--json"]));
    let b = stdout(&entmol(&["analyze", ring.to_str().unwrap(), "--json"]));
    assert_eq!(a, b);
    let parsed = AnalysisReport::from_json(&a).unwrap();
    assert_eq!(parsed, AnalysisReport::from_json(&parsed.to_json()).unwrap());
    assert_eq!(parsed.to_json().trim_end(), a.trim_end());
}

#[test]
fn check_family_against_own_spec_passes() {
    let o = entmol(&["check", fixture("complete6").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("result: pass"));
}

#[test]
fn check_ghz_against_complete_graph_fails_every_pair() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "k3.mol", "qubits 3\nbind 1 2 1\nbind 1 3 1\nbind 2 3 1\n");
    let ghz = dir.path().join("ghz.json");
    entmol(&["state", "--ghz", "3", "--out", ghz.to_str().unwrap()]);
    let o = entmol(&["check", &spec, "--against", ghz.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let report: PatternReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report.mismatches.len(), 3);

    let w = dir.path().join("w.json");
    entmol(&["state", "--w", "3", "--out", w.to_str().unwrap()]);
    assert_eq!(
        entmol(&["check", &spec, "--against", w.to_str().unwrap()])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn check_against_saved_report() {
    let dir = TempDir::new().unwrap();
    let report = dir.path().join("r.json");
    let star = fixture("star6");
    entmol(&["analyze", star.to_str().unwrap(), "--out", report.to_str().unwrap()]);
    assert_eq!(
        entmol(&["check", star.to_str().unwrap(), "--against", report.to_str().unwrap()])
            .status
            .code(),
        Some(0)
    );
    let ring = fixture("ring6");
    assert_eq!(
        entmol(&["check", ring.to_str().unwrap(), "--against", report.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn bounds_star_and_all_equal() {
    let o = entmol(&["bounds", "--n", "6", "--scenario", "star", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let entry = |name: &str| {
        v["entries"]
            .as_array()
            .unwrap()
            .iter()
            .find(|e| e["quantity"] == name)
            .unwrap()
            .clone()
    };
    assert!((entry("concurrence_family")["computed"].as_f64().unwrap() - 0.2).abs() < 1e-10);
    assert!((entry("concurrence_max")["computed"].as_f64().unwrap() - 1.0 / 5f64.sqrt()).abs() < 1e-10);
    let o = entmol(&["bounds", "--n", "3", "--scenario", "all_equal"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        entmol(&["bounds", "--n", "2", "--scenario", "star"]).status.code(),
        Some(2)
    );
    assert_eq!(
        entmol(&["bounds", "--n", "4", "--scenario", "ladder"]).status.code(),
        Some(2)
    );
}

#[test]
fn dot_output() {
    let star = stdout(&entmol(&["dot", fixture("star6").to_str().unwrap()]));
    assert_eq!(star.matches(" -- ").count(), 5);
    assert_eq!(star.matches("penwidth=1.2000,").count(), 5);
    let ring = stdout(&entmol(&["dot", fixture("ring6").to_str().unwrap()]));
    assert!(ring.contains("A1 -- A2 [penwidth=1.2778, label=\"0.2222\"]"));
    assert!(ring.contains("A2 -- A3 [penwidth=0.8889, label=\"0.1111\"]"));
    let dir = TempDir::new().unwrap();
    let ghz = dir.path().join("ghz.json");
    entmol(&["state", "--ghz", "4", "--out", ghz.to_str().unwrap()]);
    let g = stdout(&entmol(&["dot", ghz.to_str().unwrap()]));
    assert_eq!(g.matches(" -- ").count(), 0);
    assert_eq!(g.matches("A4;").count(), 1);
}

#[test]
fn sample_is_reproducible() {
    let args = [
        "sample",
        "--test",
        "monogamy3",
        "--count",
        "500",
        "--seed",
        "7",
        "--json",
    ];
    let a = stdout(&entmol(&args));
    assert_eq!(a, stdout(&entmol(&args)));
    let report: SampleReport = serde_json::from_str(&a).unwrap();
    assert_eq!(report.violations, 0);
    assert!(report.max_statistic <= 1.0 + 1e-9);
    assert_eq!(
        entmol(&["sample", "--test", "wmax", "--count", "0"]).status.code(),
        Some(2)
    );
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.mol", "qubits 3\nbind 1 1 1\n");
    let o = entmol(&["analyze", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2, column 6"));
    assert_eq!(entmol(&["analyze", "/nonexistent/x.mol"]).status.code(), Some(3));
    assert_eq!(
        entmol(&["state", "--w", "8", "--max-qubits", "6"]).status.code(),
        Some(4)
    );
    assert_eq!(entmol(&["state", "--w", "30"]).status.code(), Some(4));
    assert_eq!(entmol(&["state"]).status.code(), Some(2));
    assert_eq!(
        entmol(&["state", "--w", "3", "--out", "/nonexistent/dir/w.json"])
            .status
            .code(),
        Some(3)
    );
    let o = Command::new(env!("CARGO_BIN_EXE_entmol"))
        .args(["state", "--ghz", "5"])
        .env("ENTMOL_MAX_QUBITS", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn text_output_is_readable() {
    let o = entmol(&["analyze", fixture("star6").to_str().unwrap()]);
    let text = stdout(&o);
    assert!(text.contains("concurrence sum"));
    assert!(text.contains("check concurrence_sum_is_one: pass"));
}
