use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use sha2::{Digest, Sha256};

fn fixdist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fixdist")).args(args).output().expect("binary runs")
}

fn run_in(dir: &Path, cmd: &str, extra: &[&str]) -> Output {
    let mut args = vec![cmd, "--out", dir.to_str().unwrap(), "--threads", "2"];
    args.extend_from_slice(extra);
    fixdist(&args)
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn every_subcommand_writes_a_consistent_manifest() {
    for cmd in ["construct", "complexity", "shatter", "distances", "gc", "packing", "cantor", "figures"] {
        let dir = tempfile::tempdir().unwrap();
        let out = run_in(dir.path(), cmd, &[]);
        assert!(out.status.success(), "{cmd}: {}", String::from_utf8_lossy(&out.stderr));
        let manifest = read_json(&dir.path().join("manifest.json"));
        assert_eq!(manifest["command"], cmd);
        let config = fs::read(dir.path().join("config.json")).unwrap();
        assert_eq!(manifest["config_sha256"], hex::encode(Sha256::digest(&config)));
        let outputs = manifest["outputs"].as_array().unwrap();
        assert!(!outputs.is_empty(), "{cmd}");
        for o in outputs {
            let bytes = fs::read(dir.path().join(o["file"].as_str().unwrap())).unwrap();
            assert_eq!(o["sha256"], hex::encode(Sha256::digest(&bytes)), "{cmd}");
        }
    }
}

#[test]
fn rerun_from_resolved_config_is_byte_identical() {
    let first = tempfile::tempdir().unwrap();
    let second = tempfile::tempdir().unwrap();
    let out = run_in(first.path(), "gc", &["--seed", "7"]);
    assert!(out.status.success());
    let config = first.path().join("config.json");
    // a different thread count must not change anything
    let out = fixdist(&["gc", "--config", config.to_str().unwrap(), "--out", second.path().to_str().unwrap(), "--threads", "1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for file in ["manifest.json", "config.json", "gc.csv", "gc_trials.csv"] {
        assert_eq!(
            fs::read(first.path().join(file)).unwrap(),
            fs::read(second.path().join(file)).unwrap(),
            "{file}"
        );
    }
    assert_eq!(read_json(&first.path().join("manifest.json"))["seed"], 7);
}

#[test]
fn unknown_config_key_exits_with_config_status() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    fs::write(&cfg, r#"{"trials": 10, "tirals": 5}"#).unwrap();
    let out = run_in(&dir.path().join("out"), "complexity", &["--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("tirals"));
}

#[test]
fn invalid_values_exit_with_config_status() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    fs::write(&cfg, r#"{"delta": 1.5}"#).unwrap();
    let out = run_in(&dir.path().join("out"), "construct", &["--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let missing = run_in(&dir.path().join("out"), "construct", &["--config", "/nonexistent/cfg.json"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn exhausted_budget_is_fatal_only_when_strict() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("tight.json");
    fs::write(&cfg, r#"{"points": [0.5, 0.7, 1.1], "budget": 1}"#).unwrap();
    let relaxed = run_in(&dir.path().join("a"), "shatter", &["--config", cfg.to_str().unwrap()]);
    assert!(relaxed.status.success());
    assert!(String::from_utf8_lossy(&relaxed.stderr).contains("budget"));
    let report = read_json(&dir.path().join("a/shatter.json"));
    assert!(report["budget_exceeded"].as_u64().unwrap() > 0);

    let strict = run_in(&dir.path().join("b"), "shatter", &["--config", cfg.to_str().unwrap(), "--strict"]);
    assert_eq!(strict.status.code(), Some(3));
    assert!(dir.path().join("b/shatter.json").exists());
}

#[test]
fn complexity_cap_is_a_budget_failure_under_strict() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cap.json");
    fs::write(&cfg, r#"{"eps": [0.04], "n_cap": 64, "trials": 100}"#).unwrap();
    let out = run_in(&dir.path().join("o"), "complexity", &["--config", cfg.to_str().unwrap(), "--strict"]);
    assert_eq!(out.status.code(), Some(3));
    let csv = fs::read_to_string(dir.path().join("o/complexity.csv")).unwrap();
    assert!(csv.starts_with("eps,delta,n_probed,failures,trials,n_hat,ci_lo,ci_hi,seed\n"));
}

#[test]
fn figures_match_closed_forms() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run_in(dir.path(), "figures", &[]).status.success());
    let text = fs::read_to_string(dir.path().join("figure_rho.csv")).unwrap();
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    let mut at_zero = None;
    for r in rows.records() {
        let r = r.unwrap();
        let x: f64 = r[0].parse().unwrap();
        let rho: f64 = r[1].parse().unwrap();
        let out: u8 = r[2].parse().unwrap();
        assert_eq!(out == 1, (5.0 * x).cos() >= 0.0 || rho == 0.0, "x = {x}");
        if x == 0.0 {
            at_zero = Some(rho);
        }
    }
    assert!((at_zero.unwrap() - 0.02).abs() < 1e-15);
}

#[test]
fn shatter_single_labeling_finds_verified_weight() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("one.json");
    fs::write(&cfg, r#"{"log_primes": 4, "labels": [1, 0, 0, 1]}"#).unwrap();
    assert!(run_in(&dir.path().join("o"), "shatter", &["--config", cfg.to_str().unwrap()]).status.success());
    let report = read_json(&dir.path().join("o/shatter.json"));
    let outcome = &report["outcomes"][0];
    assert_eq!(outcome["status"], "found");
    let w = outcome["witness_w"].as_f64().unwrap();
    for (i, p) in [2.0f64, 3.0, 5.0, 7.0].iter().enumerate() {
        let fires = (w * p.ln()).cos() >= 0.0;
        assert_eq!(fires, i == 0 || i == 3, "w = {w}");
    }
}
