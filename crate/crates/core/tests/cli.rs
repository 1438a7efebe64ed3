use std::process::Command;

use projsymp::cli::{Report, Status, EXIT_CONFIG, EXIT_PASS};
use serde_json::Value;

fn projsymp() -> Command {
    Command::new(env!("CARGO_BIN_EXE_projsymp"))
}

#[test]
fn lemma1_passes_and_reports_kappa() {
    let out = projsymp().args(["lemma1", "--json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_PASS));
    let report: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report.passed);
    let kappa = report
        .checks
        .iter()
        .find(|c| c.name == "lemma1.kappa")
        .unwrap();
    assert_eq!(kappa.status, Status::Pass);
    assert_eq!(kappa.witness["kappa"], Value::from("-2"));
    assert!(kappa.replay.starts_with("projsymp lemma1 --seed 7"));
}

#[test]
fn pairing_writes_a_six_by_six_antisymmetric_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pairing.json");
    let out = projsymp()
        .args(["pairing", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_PASS));
    assert!(String::from_utf8_lossy(&out.stdout).contains("3 checks, 0 failed"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let check = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "pairing.descended_form")
        .unwrap();
    let rows = check["witness"]["matrix"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row.as_array().unwrap().len(), 6);
        for (j, entry) in row.as_array().unwrap().iter().enumerate() {
            let mirror = rows[j][i].as_str().unwrap();
            let negated = match mirror.strip_prefix('-') {
                Some(s) => s.to_string(),
                None if mirror == "0" => "0".to_string(),
                None => format!("-{mirror}"),
            };
            assert_eq!(entry.as_str().unwrap(), negated);
        }
    }
}

#[test]
fn bad_configuration_exits_with_config_code() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"truncation": 2}"#).unwrap();
    let out = projsymp()
        .arg("jets")
        .arg("--config")
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_CONFIG));
    assert!(String::from_utf8_lossy(&out.stderr).contains("truncation"));

    std::fs::write(&path, r#"{"curve": ["1", "0", "1"]}"#).unwrap();
    let out = projsymp()
        .arg("jets")
        .arg("--config")
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_CONFIG));

    let out = projsymp().arg("no-such-command").output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_CONFIG));
}

#[test]
fn default_config_loads_back() {
    let out = projsymp().arg("default-config").output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_PASS));
    let shipped =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/config/default.json"))
            .unwrap();
    let printed: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(printed, serde_json::from_str::<Value>(&shipped).unwrap());
}

#[test]
fn seed_override_changes_the_replay_line() {
    let out = projsymp()
        .args(["residues", "--seed", "11", "--json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_PASS));
    let report: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.config.seed, 11);
    assert!(report.checks.iter().all(|c| c.replay.contains("--seed 11")));
}
