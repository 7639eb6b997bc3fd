use std::path::Path;
use std::process::{Command, Output};

use eof_cli::report::RunReport;
use eof_cli::statefile::StateFile;
use eof_core::entanglement::wootters_eof;
use eof_core::states::werner;

fn eof(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eof")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn json(args: &[&str]) -> RunReport {
    let mut full = args.to_vec();
    full.push("--json");
    let out = eof(&full);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn h(x: f64) -> f64 {
    let t = |p: f64| if p > 0.0 { -p * p.log2() } else { 0.0 };
    t(x) + t(1.0 - x)
}

#[test]
fn eof_examples() {
    let r = json(&["eof", "--family", "mc2", "--p", "0.5", "--theta", "0.7853981634"]);
    assert!((r.results["eof"] - 1.0).abs() < 1e-9);
    let r = json(&["eof", "--family", "mc2", "--theta", "0.7"]);
    assert!((r.results["eof"] - h(0.7f64.cos().powi(2))).abs() < 1e-12);
    assert_eq!(r.results["eof"], r.results["cost"]);
    assert!(r.results["gap"] > 0.0);
    let r = json(&["eof", "--family", "werner", "--d", "3", "--F", "-0.5"]);
    assert!((r.results["eof"] - h(0.5 + 0.5 * 0.75f64.sqrt())).abs() < 1e-12);
}

#[test]
fn validation_errors_exit_2() {
    for args in [
        &["eof", "--family", "mc2", "--theta", "3"][..],
        &["eof", "--family", "nope"],
        &["eof", "--family", "werner", "--d", "3", "--F", "2"],
        &["compose", "--factor", "mc2:theta=0.7,bogus=1"],
        &["gap-scan", "lemma3", "--p", "0:1:3", "--theta", "0.5:0.4"],
        &["od", "verify", "--family", "isotropic", "--d", "4", "--F", "0.9"],
    ] {
        let out = eof(args);
        assert_eq!(code(&out), 2, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    }
}

#[test]
fn scale_guard_exits_4_unless_forced() {
    let out = eof(&["oracle", "--family", "werner", "--d", "4", "--F", "-0.5"]);
    assert_eq!(code(&out), 4);
    assert!(String::from_utf8_lossy(&out.stderr).contains("--force"));
    let out = eof(&[
        "oracle",
        "--family",
        "werner",
        "--d",
        "3",
        "--F",
        "-0.5",
        "--force",
        "--restarts",
        "1",
        "--samples",
        "0",
        "--max-iters",
        "5",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn vanishing_gap_fails_assert_positive() {
    let quarter = "0.785398163397:0.785398163397:1";
    let out = eof(&["gap-scan", "tensor-mc", "--theta", quarter, "--theta", quarter, "--assert-positive"]);
    assert_eq!(code(&out), 3);
    let out = eof(&["gap-scan", "tensor-mc", "--theta", "0.7:0.7:1", "--theta", "0.4:0.4:1", "--assert-positive"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn csv_format() {
    let out = eof(&["gap-scan", "lemma3", "--p", "0:1:3", "--theta", "0.5:0.5:1"]);
    assert_eq!(code(&out), 0);
    let csv = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "p,theta,gap");
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[1], "0,0.5,0");
    let row: Vec<f64> = lines[2].split(',').map(|x| x.parse().unwrap()).collect();
    assert_eq!(&row[..2], &[0.5, 0.5]);
    assert!(row[2] > 0.0);

    let out = eof(&["gap-scan", "tensor-mc", "--theta", "0.7:0.7:1", "--theta", "0.1:0.4:2"]);
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.starts_with("theta1,theta2,gap\n0.7,0.1,"));
    assert_eq!(csv.lines().count(), 3);
}

#[test]
fn no_partial_csv_on_invalid_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.csv");
    let p = path.to_str().unwrap();
    let out = eof(&["gap-scan", "lemma3", "--p", "0.5:0.5:1", "--theta", "0.5:2:4", "--csv", p]);
    assert_eq!(code(&out), 2);
    assert!(!path.exists());
    let out = eof(&["gap-scan", "lemma3", "--p", "0.1:0.9:3", "--theta", "0.5:1:3", "--csv", p]);
    assert_eq!(code(&out), 0);
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 10);
}

#[test]
fn state_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.json");
    let p = path.to_str().unwrap();
    assert_eq!(code(&eof(&["state", "--family", "werner", "--d", "2", "--F", "-0.4", "--out", p])), 0);
    let rho = werner(2, -0.4).unwrap();
    let file = StateFile::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(file, StateFile::from_density(&rho));
    assert_eq!(StateFile::read(Path::new(p)).unwrap(), rho);
    assert_eq!(StateFile::parse(&file.to_json()).unwrap(), file);
    let r = json(&["eof", "--state", p]);
    assert!((r.results["eof"] - wootters_eof(&rho).unwrap()).abs() < 1e-12);

    let out = eof(&["state", "--random", "--state-seed", "3", "--rank", "2"]);
    let random = StateFile::parse(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!((random.d_a, random.d_b), (2, 2));
    assert!(random.to_density().is_ok());

    std::fs::write(&path, r#"{"dA": 2, "dB": 2, "matrix": [[[1, 0]]]}"#).unwrap();
    assert_eq!(code(&eof(&["eof", "--state", p])), 2);
}

#[test]
fn json_report_round_trips() {
    let r = json(&["oracle", "--family", "mc2", "--p", "0.3", "--theta", "0.7", "--restarts", "8", "--seed", "4"]);
    let text = serde_json::to_string(&r).unwrap();
    let back: RunReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back.results, r.results);
    assert_eq!(back.seed, Some(4));
    assert!(r.checks.iter().all(|c| c.passed));
    assert!((r.results["min_value"] - h(0.7f64.cos().powi(2))).abs() < 1e-4);
}

#[test]
fn rank_one_oracle_returns_pure_entanglement() {
    let r = json(&["oracle", "--family", "mc2", "--p", "1", "--theta", "0.6", "--restarts", "1"]);
    assert!((r.results["min_value"] - h(0.6f64.cos().powi(2))).abs() < 1e-10);
}

#[test]
fn compose_examples() {
    let r = json(&["compose", "--factor", "mc2:theta=0.7", "--factor", "mc2:theta=0.4"]);
    let want = h(0.7f64.cos().powi(2)) + h(0.4f64.cos().powi(2));
    assert!((r.results["member_eof"] - want).abs() < 1e-12);
    assert_eq!((r.results["dA"], r.results["dB"], r.results["kets"]), (4.0, 4.0, 4.0));

    // A single factor passes through unchanged.
    let r = json(&["compose", "--factor", "mc2:theta=0.7"]);
    assert!((r.results["member_eof"] - h(0.7f64.cos().powi(2))).abs() < 1e-12);

    // One additive factor is enough.
    let r = json(&["compose", "--factor", "werner:d=3,F=-0.5", "--factor", "mc2:theta=0.7"]);
    assert!(r.results["member_eof"] > 0.0);

    let out = eof(&["compose", "--factor", "werner:d=3,F=-0.5", "--factor", "werner:d=3,F=-0.5"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("additive"));
}

#[test]
fn od_verify_examples() {
    let r = json(&["od", "verify", "--family", "werner", "--d", "3", "--F", "-0.5"]);
    assert!(r.checks.iter().all(|c| c.passed));

    let r = json(&["od", "verify", "--family", "isotropic", "--d", "3", "--F", "0.95", "--m", "2"]);
    assert!(r.checks.iter().all(|c| c.passed));
    assert_eq!((r.results["coeff_rows"], r.results["modulus"]), (39.0, 13.0));

    let r = json(&["od", "verify", "--family", "lemma3", "--p", "0.5", "--d", "3", "--f", "2", "--c", "uniform"]);
    assert!(r.checks.iter().all(|c| c.passed));
    assert!(r.notes.iter().any(|n| n.contains("not equal")));
}
