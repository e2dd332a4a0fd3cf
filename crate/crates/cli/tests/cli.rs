use std::path::Path;
use std::process::{Command, Output};

use mobius_core::STANDARD_CONFIG;
use serde_json::Value;

fn mobius(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mobius"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("run mobius")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn write_config(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

#[test]
fn standard_verify_exits_zero_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = mobius(dir.path(), &["verify"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let report: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap())
            .unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["values"]["k"], 3);
    let names: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    let mut unique = names.clone();
    unique.sort();
    unique.dedup();
    assert_eq!(unique.len(), names.len(), "duplicate check names");
}

#[test]
fn invalid_configs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&mobius(dir.path(), &["verify", "--k", "2"])), 2);
    write_config(
        dir.path(),
        "same.toml",
        &STANDARD_CONFIG.replace("beta = [0.0, 3.0]", "beta = [2.0, 0.0]"),
    );
    assert_eq!(code(&mobius(dir.path(), &["verify", "--config", "same.toml"])), 2);
    write_config(dir.path(), "bad.toml", "[punctures]\nalpha = 2\n");
    assert_eq!(code(&mobius(dir.path(), &["verify", "--config", "bad.toml"])), 2);
    assert_eq!(code(&mobius(dir.path(), &["verify", "--config", "missing.toml"])), 2);
    write_config(
        dir.path(),
        "wide.toml",
        &STANDARD_CONFIG.replace("R = 1.5", "R = 2.5"),
    );
    assert_eq!(code(&mobius(dir.path(), &["verify", "--config", "wide.toml"])), 2);
}

#[test]
fn failed_checks_exit_one_and_write_no_mesh() {
    let dir = tempfile::tempdir().unwrap();
    write_config(
        dir.path(),
        "strict.toml",
        &STANDARD_CONFIG.replace("compat = 1e-8", "compat = 1e-30"),
    );
    let out = mobius(dir.path(), &["mesh", "--config", "strict.toml"]);
    assert_eq!(code(&out), 1);
    assert!(!dir.path().join("mobius.obj").exists());
    let report: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap())
            .unwrap();
    assert_eq!(report["passed"], false);
}

#[test]
fn multiplier_subcommand_outcomes() {
    let dir = tempfile::tempdir().unwrap();
    let ok = mobius(dir.path(), &["lemma2", "--m1", "2", "--D", "13"]);
    assert_eq!(code(&ok), 0);
    assert!(String::from_utf8_lossy(&ok.stdout).contains("(2 + √13)/3"));
    assert_eq!(code(&mobius(dir.path(), &["lemma2", "--m1", "1"])), 1);
    let three = mobius(dir.path(), &["lemma2", "--m1", "3", "--out", "l.json"]);
    assert_eq!(code(&three), 0);
    let v: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("l.json")).unwrap()).unwrap();
    assert_eq!(v["values"]["m2_roots"][0], "(3 + √73)/8");
    assert_eq!(code(&mobius(dir.path(), &["lemma2", "--m1", "2", "--D", "7"])), 2);
    assert_eq!(code(&mobius(dir.path(), &["lemma2", "--m1", "two"])), 2);
}

#[test]
fn probe_verdicts_and_argument_errors() {
    let dir = tempfile::tempdir().unwrap();
    let alpha = mobius(dir.path(), &["probe", "--target", "alpha", "--out", "p.json"]);
    assert_eq!(code(&alpha), 0);
    let v: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("p.json")).unwrap()).unwrap();
    assert_eq!(v["values"]["verdict"], "diverges");
    let regular = mobius(dir.path(), &["probe", "--target", "0.5,0.5", "--out", "q.json"]);
    assert_eq!(code(&regular), 0);
    let v: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("q.json")).unwrap()).unwrap();
    assert_eq!(v["values"]["verdict"], "converges");
    assert_eq!(code(&mobius(dir.path(), &["probe", "--eps", "1e-3,1e-2,1e-4"])), 2);
    assert_eq!(code(&mobius(dir.path(), &["probe", "--target", "gamma"])), 2);
    assert_eq!(code(&mobius(dir.path(), &["probe", "--target", "beta-image"])), 0);
}

#[test]
fn config_hash_matches_between_report_and_mesh() {
    let dir = tempfile::tempdir().unwrap();
    write_config(dir.path(), "std.toml", STANDARD_CONFIG);
    let out = mobius(dir.path(), &["mesh", "--config", "std.toml", "--mesh", "m.obj", "--out", "m.json"]);
    assert_eq!(code(&out), 0);
    let report: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("m.json")).unwrap()).unwrap();
    let obj = std::fs::read_to_string(dir.path().join("m.obj")).unwrap();
    let header = mobius_core::parse_obj(&obj).unwrap().header;
    assert_eq!(report["config_hash"], header["config_hash"].as_str());
    assert_eq!(header["config_hash"], mobius_core::config_hash(STANDARD_CONFIG.as_bytes()));
    assert_eq!(header["k"], "3");
}

#[test]
fn coeffs_dump_is_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = mobius(dir.path(), &["coeffs"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["k"], 3);
    assert_eq!(v["psi"].as_array().unwrap().len(), 3);
    assert_eq!(v["base"][0]["band"], 48);
}
