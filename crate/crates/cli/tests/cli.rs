//! End-to-end checks of the command-line interface: output shapes, exit codes,
//! and byte determinism.

use std::process::{Command, Output};

fn mapdist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mapdist"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn three_point_emits_the_expected_series() {
    let out = mapdist(&[
        "three-point",
        "--family",
        "general",
        "--d",
        "2",
        "2",
        "2",
        "--order",
        "8",
        "--ring",
        "q",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["ring"], "Q");
    assert_eq!(v["order"], 8);
    let coeffs: Vec<String> = v["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap().to_string())
        .collect();
    assert_eq!(
        coeffs,
        ["0", "0", "0", "2", "39", "558", "7123", "86139", "1011954"]
    );
}

#[test]
fn triangle_violation_is_a_usage_error() {
    let out = mapdist(&["three-point", "--family", "general", "--d", "1", "1", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("triangular inequality"), "stderr: {err}");
}

#[test]
fn bipartite_odd_total_is_a_usage_error() {
    let out = mapdist(&["three-point", "--family", "bipartite", "--d", "1", "1", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("even total distance"), "stderr: {err}");
}

#[test]
fn output_is_byte_deterministic() {
    let args = [
        "two-point",
        "--family",
        "bipartite",
        "--ring",
        "qz",
        "--d",
        "2",
        "--order",
        "6",
    ];
    let a = stdout(&mapdist(&args));
    let b = stdout(&mapdist(&args));
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn verify_identities_single_id_passes() {
    let out = mapdist(&[
        "verify-identities",
        "--id",
        "recurN",
        "--order",
        "10",
        "--json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v[0]["identity"], "recurN");
    assert_eq!(v[0]["status"], "pass");
}

#[test]
fn unknown_identity_is_a_usage_error() {
    let out = mapdist(&["verify-identities", "--id", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_table_at_one_edge() {
    let out = mapdist(&["oracle", "--edges", "1", "--kind", "bipointed"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["edges"], 1);
    assert_eq!(v["entries"][0]["distances"][0], 1);
    // the single-edge map: one face, total weight z
    assert_eq!(v["entries"][0]["face_weight"][1], "1");
}

#[test]
fn oracle_compare_passes_at_small_size() {
    let out = mapdist(&["oracle", "compare", "--max-edges", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("all entries match"));
}

#[test]
fn scaling_critical_values() {
    let out = mapdist(&["scaling", "critical", "--family", "general", "--z", "1.0"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let g = v["g_crit"].as_f64().unwrap();
    assert!((g - 1.0 / 12.0).abs() < 1e-12);
    let out = mapdist(&["scaling", "critical", "--family", "general", "--z", "-1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scaling_converge_emits_csv() {
    let out = mapdist(&[
        "scaling",
        "converge",
        "--family",
        "general",
        "--z",
        "1",
        "--D",
        "1",
        "--eps",
        "0.1",
        "0.05",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "eps,g,d,discrete,continuum,rel_error"
    );
    assert_eq!(lines.count(), 2);
}

#[test]
fn bijection_suite_small_run() {
    let out = mapdist(&["verify-bijections", "--faces", "1", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["status"], "pass");
}
