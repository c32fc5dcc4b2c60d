use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn leafdbar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leafdbar")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad JSON ({e}); stderr: {}", String::from_utf8_lossy(&out.stderr))
    })
}

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

fn re(v: &Value, key: &str) -> f64 {
    v[key]["re"].as_f64().unwrap()
}

#[test]
fn obstruction_examples() {
    let zero = leafdbar(&["obstruction", "--form", "0"]);
    assert!(zero.status.success());
    let v = json(&zero);
    assert_eq!((re(&v, "c"), v["c"]["im"].as_f64().unwrap()), (0.0, 0.0));

    let v = json(&leafdbar(&["obstruction", "--form", "omega0"]));
    assert_eq!(re(&v, "c"), 1.0);
    assert!(re(&v, "I_omega0") < 0.0);

    let v = json(&leafdbar(&["obstruction", "--form", "2.5*omega0 + 1*exact_g0"]));
    assert!((re(&v, "c") - 2.5).abs() < 1e-2);
}

#[test]
fn output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "c.json", r#"{"form": "(1-2i)*omega0 + 0.5*exact_g0", "lambda": 0.6}"#);
    let a = leafdbar(&["obstruction", "-c", &cfg]);
    let b = leafdbar(&["obstruction", "-c", &cfg]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert!((re(&v, "c") - 1.0).abs() < 1e-2 && (v["c"]["im"].as_f64().unwrap() + 2.0).abs() < 1e-2);
}

#[test]
fn config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        r#"{"cutoff": {"r": 1.0, "eps": 1.2, "r_out": 2.5}}"#,
        r#"{"lambda": 1.0}"#,
        r#"{"unknown_field": 1}"#,
        r#"{"form": "omega0 +"}"#,
        "not json",
    ];
    for (i, body) in cases.iter().enumerate() {
        let cfg = write_config(dir.path(), &format!("bad{i}.json"), body);
        for verb in ["verify", "obstruction", "decompose"] {
            let out = leafdbar(&[verb, "-c", &cfg]);
            assert_eq!(out.status.code(), Some(2), "{verb} with {body}");
            assert!(out.stdout.is_empty(), "nothing runs before validation");
        }
    }
    assert_eq!(leafdbar(&["obstruction", "-c", "/nonexistent/config.json"]).status.code(), Some(2));
    assert_eq!(leafdbar(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn coverage_failure_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "small.json", r#"{"quadrature": {"r_max": 2.0}, "form": "omega0"}"#);
    let out = leafdbar(&["obstruction", "-c", &cfg]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn verify_passes_at_default_and_slow_contraction() {
    let out = leafdbar(&["verify"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    assert_eq!(v["all_passed"], Value::Bool(true));
    let names: Vec<&str> = v["properties"].as_array().unwrap().iter().map(|p| p["name"].as_str().unwrap()).collect();
    for expected in ["cutoff_scaling", "cutoff_telescoping", "scale_constancy", "coboundary_telescoping", "rigidity_relation"] {
        assert!(names.contains(&expected), "{expected} missing");
    }

    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "slow.json", r#"{"lambda": 0.9}"#);
    let out = leafdbar(&["verify", "-c", &cfg]);
    assert!(out.status.success());
    let v = json(&out);
    assert!(v["suggested_j_max"].as_u64().unwrap() > v["j_max"].as_u64().unwrap());
}

#[test]
fn decompose_generator_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("grid.csv");
    let js = dir.path().join("report.json");
    let out = leafdbar(&[
        "decompose",
        "--form",
        "omega0",
        "--csv",
        csv.to_str().unwrap(),
        "--json",
        js.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(re(&v, "c"), 1.0);
    assert!(v["h_grid_std"].as_f64().unwrap() < 1e-6);
    assert_eq!(std::fs::read(&js).unwrap(), out.stdout);

    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "re_z,im_z,t,re_h,im_h,pde_residual,inv_residual");
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|c| c.parse().unwrap()).collect()).collect();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r.len() == 7 && r[5] < 1e-6));
}

#[test]
fn missing_output_directory_leaves_no_files() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("missing").join("grid.csv");
    let js = dir.path().join("report.json");
    let out = leafdbar(&[
        "decompose",
        "--form",
        "omega0",
        "--json",
        js.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert!(!out.status.success());
    assert!(!csv.exists() && !js.exists());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn decompose_exact_form() {
    let out = leafdbar(&["decompose", "--form", "exact_g0"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert!(re(&v, "c").abs() < 1e-3);
    let r = &v["residuals"];
    assert!(r["pde"].as_f64().unwrap() < 1e-3 && r["invariance"].as_f64().unwrap() < 1e-3);
    assert_eq!(r["within_tolerance"], Value::Bool(true));
}

#[test]
fn dump_cutoffs_profiles() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "d.json", r#"{"dump": {"levels": 2, "samples": 11, "r_max": 10.0}}"#);
    let out = leafdbar(&["dump-cutoffs", "-c", &cfg]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "r,rho0,phi_0,phi_1,phi_2,psi_0,psi_1,psi_2");
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|c| c.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 11);
    for r in &rows {
        // psi_0 + psi_1 + psi_2 = phi_2
        assert!((r[5] + r[6] + r[7] - r[4]).abs() < 1e-14);
        assert_eq!(r[1], r[2]);
    }
    assert_eq!(rows[0][1], 1.0);
    assert_eq!(rows[10][7], 0.0);

    let target = dir.path().join("cut.csv");
    let out = leafdbar(&["dump-cutoffs", "--csv", target.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    assert!(std::fs::read_to_string(&target).unwrap().starts_with("r,rho0,phi_0"));
}
