use std::fs;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn phsusy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phsusy"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn default_verify_passes() {
    let o = phsusy(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["summary"]["failed"], 0);
    assert_eq!(doc["params"]["omega"], 2.0);
    let suites: Vec<&str> = doc["suites"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
    assert_eq!(suites, ["core", "phermion", "susy", "grassmann", "scs"]);
    for c in doc["checks"].as_array().unwrap() {
        assert!(c["anchor"].is_string() && c["check_id"].is_string());
        assert!(c["residual"].is_number());
    }
    assert!(stderr(&o).contains("wall time"));
}

#[test]
fn complex_spectrum_is_rejected() {
    let o = phsusy(&["verify", "--omega", "1", "--alpha", "1", "--beta", "-1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("real-spectrum condition violated"));
    assert!(o.stdout.is_empty());
}

#[test]
fn domain_error_reports_argument() {
    let o = phsusy(&["verify", "--z", "0.7"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("z = 0.7"), "{err}");
    assert!(err.contains("arctanh argument 6.1"), "{err}");
}

#[test]
fn reports_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# quick run\nsuites = core, phermion, grassmann\nseed = 17\nsamples = 64\n").unwrap();
    let mut bytes = Vec::new();
    for k in 0..2 {
        let out = dir.path().join(format!("r{k}.json"));
        let o = phsusy(&["verify", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        assert!(o.stdout.is_empty());
        bytes.push(fs::read(&out).unwrap());
    }
    assert_eq!(bytes[0], bytes[1]);
    let doc: Value = serde_json::from_slice(&bytes[0]).unwrap();
    assert_eq!(doc["seed"], 17);
}

#[test]
fn flags_override_config_file() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "omega = 3\nsuites = core\nsamples = 8\n").unwrap();
    let o = phsusy(&["verify", "--config", cfg.to_str().unwrap(), "--omega", "2.5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["params"]["omega"], 2.5);
}

#[test]
fn config_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("bad.cfg");
    fs::write(&cfg, "omega = 2\nmass = 1\n").unwrap();
    let o = phsusy(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"));

    let o = phsusy(&["verify", "--config", dir.path().join("missing.cfg").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let o = phsusy(&["verify", "--format", "xml"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn identity_rejects_large_amplitude_for_small_truncation() {
    let o = phsusy(&["identity", "--n-max", "4", "--set", "amp_list=[0, 2]"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Glauber tail"), "{}", stderr(&o));
}

#[test]
fn identity_small_truncation_resolves() {
    let o = phsusy(&[
        "identity", "--n-max", "6", "--set", "amp_list=0", "--set", "quad_r=8", "--set", "quad_nr=40", "--set", "quad_ntheta=32",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    let rep = &doc["identity"];
    assert!(rep["residual_cross"].as_f64().unwrap() < 1e-6);
    assert!(rep["residual_same"].as_f64().unwrap() > 1e-3);
    assert!(rep["convergence_change"].is_number());
    assert!(stderr(&o).contains("wall time"));
}

#[test]
fn sweep_emits_flagged_csv() {
    let o = phsusy(&["sweep", "--vary", "z", "--lo", "0", "--hi", "1.5", "--steps", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "param,value,epsilon,theta,omega_cap,delta,lambda,min_eig_rho,anticomm_residual,status"
    );
    assert_eq!(lines.len(), 4);
    assert!(lines[1].ends_with(",ok"));
    assert_eq!(lines[2], "z,0.75,,,,,,,,degenerate_error");
    assert!(lines[3].ends_with(",ok"));
}

#[test]
fn sweep_rejects_unknown_parameter() {
    let o = phsusy(&["sweep", "--vary", "mass"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn spectrum_csv() {
    let o = phsusy(&["spectrum", "--n-max", "4", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = String::from_utf8(o.stdout).unwrap();
    let mults: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(3).unwrap()).collect();
    assert_eq!(mults, ["1", "2", "2", "2", "1"]);
}

#[test]
fn verify_csv_format() {
    let o = phsusy(&["verify", "--set", "suites=grassmann", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("suite,check_id,anchor,residual,tolerance,pass,note"));
}
