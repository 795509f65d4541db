//! End-to-end tests of the `hyperdot` binary: exit codes, JSON envelopes,
//! CSV/manifest output, configuration precedence, and determinism.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_hyperdot"));
    // Start from a clean override environment.
    for (k, _) in std::env::vars() {
        if k.starts_with("HYPERDOT_") {
            c.env_remove(k);
        }
    }
    c
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "command failed (status {:?}): {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON envelope")
}

#[test]
fn cm_spectrum_envelope_and_exit_zero() {
    let out = bin()
        .args(["cm-spectrum", "--b-tesla", "1.0", "--levels", "4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["command"], "cm-spectrum");
    assert!(v["version"].is_string());
    assert!(v["wall_time_s"].is_number());
    assert_eq!(v["config"]["dot"]["b_tesla"], 1.0);
    let levels = v["result"]["levels_mev"].as_array().unwrap();
    assert_eq!(levels.len(), 4);
    // Ground Fock-Darwin level is the effective quantum.
    let e0 = levels[0].as_f64().unwrap();
    let expect = v["config"]["dot"]["hbar_omega0_mev"].as_f64().unwrap().hypot(
        v["result"]["frequencies"]["omega_l_mev"].as_f64().unwrap(),
    );
    assert!((e0 - expect).abs() < 1e-9, "{e0} vs {expect}");
}

#[test]
fn rel_spectrum_reports_sorted_levels_and_diagnostics() {
    let out = bin()
        .args(["rel-spectrum", "--k-max", "2", "--n-max", "6", "--levels", "5"])
        .output()
        .unwrap();
    let v = stdout_json(&out);
    let levels: Vec<f64> =
        v["result"]["levels_mev"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    assert!(levels.windows(2).all(|w| w[0] <= w[1]), "levels not ascending: {levels:?}");
    let d = &v["result"]["diagnostics"];
    assert!(d["a_defect"].as_f64().unwrap() < 1e-8);
    assert!(d["gram_defect"].as_f64().unwrap() < 1e-8);
    assert!(d["basis_dim"].as_u64().unwrap() > 0);
}

#[test]
fn config_precedence_flags_over_env_over_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "[basis]\nk_max = 2\n\n[dot]\nbeta_mev = 1.0\n").unwrap();

    // File only.
    let v = stdout_json(
        &bin().args(["cm-spectrum", "--config"]).arg(&cfg).output().unwrap(),
    );
    assert_eq!(v["config"]["solver"]["k_max"], 2);

    // Environment beats file.
    let v = stdout_json(
        &bin()
            .args(["cm-spectrum", "--config"])
            .arg(&cfg)
            .env("HYPERDOT_K_MAX", "4")
            .output()
            .unwrap(),
    );
    assert_eq!(v["config"]["solver"]["k_max"], 4);

    // Flag beats both.
    let v = stdout_json(
        &bin()
            .args(["cm-spectrum", "--config"])
            .arg(&cfg)
            .env("HYPERDOT_K_MAX", "4")
            .args(["--k-max", "6"])
            .output()
            .unwrap(),
    );
    assert_eq!(v["config"]["solver"]["k_max"], 6);
    assert_eq!(v["config"]["dot"]["beta_mev"], 1.0);
}

#[test]
fn config_errors_exit_two() {
    // Unknown key in the TOML file.
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "[dot]\nhbar_omega = 5.0\n").unwrap();
    let out = bin().args(["cm-spectrum", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error:"));

    // Malformed sweep grid.
    let out = bin().args(["sweep", "--b", "0:1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    // Bad environment value.
    let out = bin()
        .args(["cm-spectrum"])
        .env("HYPERDOT_N_MAX", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // Empty exchange sector (no antisymmetric state below K = 2 at L = 0).
    let out = bin()
        .args(["rel-spectrum", "--k-max", "0", "--sector", "antisymmetric"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invariant_violations_exit_four() {
    // An alpha grid of 8 nodes passes static validation but cannot integrate
    // K = 8 harmonics exactly; the projector/Gram gates must catch it.
    let out = bin()
        .args(["rel-spectrum", "--k-max", "8", "--n-max", "2"])
        .env("HYPERDOT_GRID_ALPHA", "8")
        .env("HYPERDOT_GRID_PHI", "20")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invariant"));
}

#[test]
fn sweep_writes_csv_and_manifest_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let csv1 = dir.path().join("a.csv");
    let csv2 = dir.path().join("b.csv");
    let args = |out: &Path| {
        vec![
            "sweep".to_string(),
            "--b".into(),
            "0:2:3".into(),
            "--what".into(),
            "rel-interacting".into(),
            "--k-max".into(),
            "2".into(),
            "--n-max".into(),
            "4".into(),
            "--levels".into(),
            "3".into(),
            "--out".into(),
            out.display().to_string(),
        ]
    };
    let o1 = bin().args(args(&csv1)).args(["--threads", "1"]).output().unwrap();
    assert_eq!(o1.status.code(), Some(0), "{}", String::from_utf8_lossy(&o1.stderr));
    let o2 = bin().args(args(&csv2)).args(["--threads", "3"]).output().unwrap();
    assert_eq!(o2.status.code(), Some(0));

    let b1 = std::fs::read(&csv1).unwrap();
    let b2 = std::fs::read(&csv2).unwrap();
    assert_eq!(b1, b2, "CSV bytes differ across thread counts");

    let text = String::from_utf8(b1).unwrap();
    let header = text.lines().next().unwrap();
    assert_eq!(header, "sweep_param,level,l_total,sector,energy_meV");
    // 3 fields x 3 levels plus the header.
    assert_eq!(text.lines().count(), 1 + 9);

    let manifest: serde_json::Value = serde_json::from_slice(
        &std::fs::read(dir.path().join("a.csv.manifest.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(manifest["command"], "sweep");
    assert_eq!(manifest["n_rows"], 9);
    assert_eq!(manifest["csv_file"], "a.csv");
    assert_eq!(manifest["sweep_name"], "b_tesla");
}

#[test]
fn selfcheck_passes_and_reports_named_checks() {
    let out = bin().args(["selfcheck", "--threads", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let stderr = String::from_utf8_lossy(&out.stderr);
    for name in [
        "angular-log-anchor",
        "angular-gram-identity",
        "kinematic-cycle-identity",
        "radial-log-dual-route",
        "noninteracting-reduction",
        "coarse-grid-detector",
        "sweep-determinism",
    ] {
        assert!(stderr.contains(&format!("[PASS] {name}")), "missing PASS for {name}: {stderr}");
    }
    let v = stdout_json(&out);
    assert_eq!(v["command"], "selfcheck");
    assert!(v["result"].as_array().unwrap().len() >= 7);
}
