use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn pwedge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pwedge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.display().to_string()
}

const DEGENERATE: &str = r#"{"params": {"k1": [1, 1], "k2": [1, 1], "theta0": 3.9269908169872414}}"#;

#[test]
fn factor_degenerate_passes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "deg.json", DEGENERATE);
    let out = pwedge(&["factor", "--config", &cfg, "--probes", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert!(r["results"]["summary"]["max_relative_error"].as_f64().unwrap() < 1e-10);
    assert_eq!(r["config"]["params"]["k1"], serde_json::json!([1.0, 1.0]));
}

#[test]
fn factor_figure_config_meets_default_tolerance() {
    let out = pwedge(&["factor", "--probes", "3", "--tolerance", "1e-6"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn unattainable_tolerance_exits_3_with_partial_report() {
    let out = pwedge(&["factor", "--probes", "2", "--tolerance", "1e-30"]);
    assert_eq!(out.status.code(), Some(3));
    let r = report(&out);
    assert_eq!(r["status"], "fail");
    assert!(r["results"]["points"].as_array().unwrap().len() == 4);
}

#[test]
fn bad_flags_and_configs_exit_2() {
    assert_eq!(pwedge(&["nonsense"]).status.code(), Some(2));
    assert_eq!(pwedge(&["factor", "--tolerance", "-1"]).status.code(), Some(2));
    assert_eq!(pwedge(&["factor", "--config", "/nonexistent/config.json"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "typo.json", r#"{"parms": {}}"#);
    assert_eq!(pwedge(&["factor", "--config", &cfg]).status.code(), Some(2));
}

#[test]
fn residual_zero_candidate() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "deg.json", DEGENERATE);
    let out = pwedge(&["residual", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(0));
    assert!(report(&out)["results"]["summary"]["sup_residual"].as_f64().unwrap() < 1e-8);

    let out = pwedge(&["residual", "--probes", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(report(&out)["results"]["summary"]["sup_residual"].as_f64().unwrap() > 1e-3);
}

#[test]
fn malformed_candidate_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let shape = write_config(dir.path(), "a.json", r#"{"candidate": {"kind": "RATIONAL_BASIS", "terms": [{"coeff": 1}]}}"#);
    assert_eq!(pwedge(&["residual", "--config", &shape]).status.code(), Some(2));
    // pole1 in the upper half-plane
    let invalid = write_config(
        dir.path(),
        "b.json",
        r#"{"candidate": {"kind": "RATIONAL_BASIS", "terms": [{"coeff": [1, 0], "pole1": [0, 2], "order1": 1, "pole2": [0, 2], "order2": 1}]}}"#,
    );
    assert_eq!(pwedge(&["residual", "--config", &invalid]).status.code(), Some(2));
}

#[test]
fn field_degenerate_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "deg.json", DEGENERATE);
    let out_dir = dir.path().join("out");
    let out = pwedge(&["field", "--config", &cfg, "--out", out_dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out)["results"].clone();
    assert!(r["continuity"]["max_jump"].as_f64().unwrap() < 1e-2);
    assert_eq!(r["helmholtz"]["within_budget"], true);
    for side in ["interior", "exterior"] {
        let b = &r["edge"][side]["B"];
        let (re, im) = (b[0].as_f64().unwrap(), b[1].as_f64().unwrap());
        assert!((re - 1.0).hypot(im) < 1e-2, "{side}: {b}");
    }
    assert!(r["edge"]["B_difference"].is_number());
    assert!(out_dir.join("psi.csv").exists() && out_dir.join("phi.csv").exists());
    assert!(out_dir.join("field.json").exists());
}

#[test]
fn field_empty_grid_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "g.json",
        r#"{"params": {"k1": [1, 1], "k2": [1, 1], "theta0": 3.9269908169872414}, "grid": {}}"#,
    );
    assert_eq!(pwedge(&["field", "--config", &cfg]).status.code(), Some(2));
    let cfg = write_config(
        dir.path(),
        "h.json",
        r#"{"params": {"k1": [1, 1], "k2": [1, 1], "theta0": 3.9269908169872414},
            "grid": {"spacing": 0.05, "nodes": 0, "exterior_nodes": 0, "fit_radius": 0.5}}"#,
    );
    assert_eq!(pwedge(&["field", "--config", &cfg]).status.code(), Some(2));
}

#[test]
fn portrait_kappa_is_anchored_at_plus_minus_k() {
    let dir = tempfile::tempdir().unwrap();
    let out = pwedge(&["portrait", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let d = &report(&out)["results"]["discontinuities"];
    assert!(d["edges"].as_u64().unwrap() > 0);
    assert_eq!(d["unexplained"], 0);
    assert_eq!(d["unanchored_branch_points"], serde_json::json!([]));
    let bytes = std::fs::read(dir.path().join("portrait.ppm")).unwrap();
    assert!(bytes.starts_with(b"P6\n256 256\n255\n"));
    assert_eq!(bytes.len(), 15 + 3 * 256 * 256);
}

#[test]
fn portrait_reference_figure_and_png() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "p.json",
        r#"{"portrait": {"figure": "mylog_k_minus_circ", "width": 96, "height": 48, "format": "PNG"}}"#,
    );
    let out = pwedge(&["portrait", "--config", &cfg, "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"]["figure_check"]["strip_edges"], 0);
    let png = std::fs::read(dir.path().join("portrait.png")).unwrap();
    assert!(png.starts_with(&[0x89, b'P', b'N', b'G']));
}

#[test]
fn portrait_rejects_bad_requests() {
    let dir = tempfile::tempdir().unwrap();
    let zero = write_config(dir.path(), "z.json", r#"{"portrait": {"width": 0, "height": 0}}"#);
    let d = dir.path().to_str().unwrap();
    assert_eq!(pwedge(&["portrait", "--config", &zero, "--out", d]).status.code(), Some(2));
    let sel = write_config(dir.path(), "s.json", r#"{"portrait": {"function": "gamma"}}"#);
    assert_eq!(pwedge(&["portrait", "--config", &sel, "--out", d]).status.code(), Some(2));
}

#[test]
fn portrait_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "k.json",
        r#"{"portrait": {"function": "K_minus_circ", "window": [-4, 4, -4, 4], "width": 64, "height": 64}}"#,
    );
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for d in [&a, &b] {
        let out = pwedge(&["portrait", "--config", &cfg, "--out", d.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(a.join("portrait.ppm")).unwrap(), std::fs::read(b.join("portrait.ppm")).unwrap());
}

#[test]
fn split_and_ansatz_reports() {
    let out = pwedge(&["split"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(report(&out)["results"]["summary"]["max_error"].as_f64().unwrap() < 1e-8);

    let out = pwedge(&["ansatz", "--probes", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let slope = r["results"]["summary"]["decay_slopes"]["joint"].as_f64().unwrap();
    assert!((slope + 2.0).abs() < 0.1);
    assert_eq!(r["results"]["points"].as_array().unwrap().len(), 2);
}
