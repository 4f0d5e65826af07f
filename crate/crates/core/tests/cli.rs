#![allow(clippy::excessive_precision)]

use std::process::{Command, Output};

use serde_json::Value;

fn rootmean(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rootmean"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = rootmean(&full);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_str(stdout(&o).trim()).unwrap()
}

#[test]
fn floor_of_huge_index() {
    let v = json(&["floor", "123456789012345678901234567890"]);
    assert_eq!(v["value"], "234242788588009");
    assert_eq!(v["method"], "exact");
    assert_eq!(v["error_bound"], "0");
}

#[test]
fn mean_with_fixed_split() {
    let o = rootmean(&["mean", "10000000", "--nu", "100"]);
    assert!(o.status.success());
    let line = stdout(&o);
    assert!(line.contains("value=2108.1852648724285"), "{line}");
    assert!(line.contains("method=split"), "{line}");
}

#[test]
fn mean_small_is_direct() {
    let v = json(&["mean", "5"]);
    assert_eq!(v["method"], "direct");
    let x: f64 = v["value"].as_str().unwrap().parse().unwrap();
    assert!((x - 1.676466469488352408).abs() < 1e-15);
}

#[test]
fn linear_sum_is_exact() {
    let v = json(&["sum", "--from", "3", "--to", "10", "--root", "1"]);
    assert_eq!(v["value"], "52");
    assert_eq!(v["error_bound"], "0");
}

#[test]
fn output_is_deterministic() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    let a = strip(json(&["mean", "123456789", "--eps", "1e-11"]));
    let b = strip(json(&["mean", "123456789", "--eps", "1e-11"]));
    assert_eq!(a, b);
}

#[test]
fn clean_sweep_exits_zero() {
    for mode in ["theorem1", "delta", "lemma2", "lemma3"] {
        let o = rootmean(&[
            "verify",
            "--mode",
            mode,
            "--max-n",
            "2000",
            "--samples",
            "200",
        ]);
        assert_eq!(o.status.code(), Some(0), "mode {mode}: {}", stdout(&o));
    }
}

#[test]
fn domain_errors_exit_two() {
    for args in [
        &["floor", "0"][..],
        &["floor", "12x"],
        &["mean", "0"],
        &["mean", "100", "--eps", "-1"],
        &["mean", "100", "--nu", "99"],
        &["sum", "--from", "5", "--to", "4"],
        &["sum", "--from", "1", "--to", "4", "--root", "0.5"],
        &["mean", "1000000000000", "--eps", "1e-15"],
        &["bogus"],
    ] {
        let o = rootmean(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn oracle_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_rootmean"))
        .args(["verify", "--mode", "theorem1", "--max-n", "5000"])
        .env("ROOTMEAN_ORACLE_CAP", "1000")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
