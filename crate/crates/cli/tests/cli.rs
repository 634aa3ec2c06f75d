use std::path::Path;
use std::process::{Command, Output};

use bjorling_cli::mesh::read_obj;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bjorling"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap_or(-1)
}

fn report(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stderr)))
}

fn error(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stderr)))
}

fn check<'a>(section: &'a Value, name: &str) -> &'a Value {
    section["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn euclidean_gallery() {
    let o = run(&["gallery", "--metric", "euclidean", "--grid", "32x32"]);
    assert_eq!(code(&o), 0);
    let r = report(&o);
    let names: Vec<&str> = r["sections"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["catenoid", "helicoid", "enneper"]);
    let h = check(&r["sections"][0], "mean_curvature_max");
    assert!(h["value"].as_f64().unwrap() < 1e-6);
    assert_eq!(r["schema_version"], 1);
}

#[test]
fn gallery_writes_meshes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = run(&[
        "gallery",
        "--metric",
        "lorentz",
        "--grid",
        "8x6",
        "--out-dir",
        out,
    ]);
    assert_eq!(code(&o), 0);
    let mesh = read_obj(&dir.path().join("lorentz-boosted-0.5.obj")).unwrap();
    assert_eq!((mesh.vertices.len(), mesh.faces.len()), (48, 35));
    assert!(dir.path().join("lorentz-plane.csv").exists());
}

#[test]
fn identical_curves_are_rejected() {
    let o = run(&[
        "interpolate",
        "--metric",
        "lorentz",
        "--input",
        "circle(1)",
        "--target",
        "circle(1)",
    ]);
    assert_eq!(code(&o), 1);
    assert_eq!(error(&o)["error"], "ParallelTangents");
    assert!(o.stdout.is_empty());
}

/// `l = (1.05 cos u, 1.05 sin u, 0.05 sin u)` against the unit circle has a
/// spacelike `a' ×_L l'`, so no isotropic extension exists.
#[test]
fn vertical_perturbation_has_no_timelike_normal() {
    let o = run(&[
        "interpolate",
        "--metric",
        "lorentz",
        "--input",
        "circle(1)",
        "--target",
        "perturbed-circle(1,0.05)",
    ]);
    assert_eq!(code(&o), 1);
    assert_eq!(error(&o)["error"], "NotTimelike");
}

#[test]
fn coplanar_pair_interpolates() {
    let o = run(&[
        "interpolate",
        "--metric",
        "lorentz",
        "--input",
        "circle(1)",
        "--target",
        "tilted-circle(1,0.002,0)",
        "--newton",
        "--grid",
        "16x16",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(&o);
    let s = &r["sections"][0];
    assert!(
        check(s, "containment_max_residual")["value"]
            .as_f64()
            .unwrap()
            < 1e-4
    );
    assert!(check(s, "closeness_ratio")["pass"].as_bool().unwrap());
    assert!(s["results"]["newton"]["iterations"].as_u64().unwrap() <= 20);
    assert_eq!(s["results"]["newton"]["gamma_center"], 0.0);
}

/// Outside the budget the closeness flag fails and the exit code follows.
#[test]
fn closeness_failure_exits_2() {
    let o = run(&[
        "interpolate",
        "--metric",
        "lorentz",
        "--input",
        "circle(1)",
        "--target",
        "tilted-circle(1,0.02,0)",
        "--grid",
        "16x16",
    ]);
    assert_eq!(code(&o), 2);
    let r = report(&o);
    assert_eq!(r["all_pass"], false);
    assert_eq!(check(&r["sections"][0], "closeness_ratio")["pass"], false);
}

#[test]
fn newton_failure_is_a_failed_check() {
    let o = run(&[
        "interpolate",
        "--metric",
        "lorentz",
        "--input",
        "circle(1)",
        "--target",
        "tilted-circle(1,0.05,0.05)",
        "--newton",
        "--grid",
        "8x8",
    ]);
    assert_eq!(code(&o), 2);
    let r = report(&o);
    assert_eq!(r["sections"][0]["results"]["newton"]["error"], "NotInJn");
}

#[test]
fn repeated_runs_match() {
    let dir = tempfile::tempdir().unwrap();
    let mesh = dir.path().join("m.obj");
    let m = mesh.to_str().unwrap();
    let args = [
        "bjorling", "--input", "enneper", "--grid", "12x10", "--mesh", m,
    ];
    let strip = |o: &Output| {
        let mut v = report(o);
        v.as_object_mut().unwrap().remove("timestamp");
        serde_json::to_string(&v).unwrap()
    };
    let a = run(&args);
    let obj_a = std::fs::read(&mesh).unwrap();
    let b = run(&args);
    let obj_b = std::fs::read(&mesh).unwrap();
    assert_eq!(strip(&a), strip(&b));
    assert_eq!(obj_a, obj_b);
}

#[test]
fn report_file_and_tolerance_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let o = run(&[
        "bjorling",
        "--input",
        "catenoid",
        "--grid",
        "10x10",
        "--tol",
        "isotropy=1e-40",
        "--report",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 2);
    assert!(o.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["provenance"]["config"]["tolerances"]["isotropy"], 1e-40);
    assert_eq!(
        check(&r["sections"][0], "isotropy_residual")["tolerance"],
        1e-40
    );
}

#[test]
fn saved_curve_verifies_and_exports() {
    let dir = tempfile::tempdir().unwrap();
    let curve = dir.path().join("f.json");
    let mesh = dir.path().join("f.obj");
    let c = curve.to_str().unwrap();
    let o = run(&[
        "bjorling",
        "--input",
        "helix(1,0.5)",
        "--grid",
        "8x8",
        "--save-curve",
        c,
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = run(&["verify", "--input", c, "--grid", "16x16"]);
    assert_eq!(code(&v), 0);
    assert_eq!(report(&v)["command"], "verify");
    let e = run(&[
        "export",
        "--input",
        c,
        "--grid",
        "5x4",
        "--mesh",
        mesh.to_str().unwrap(),
    ]);
    assert_eq!(code(&e), 0);
    assert!(e.stdout.is_empty());
    let m = read_obj(&mesh).unwrap();
    assert_eq!((m.vertices.len(), m.faces.len()), (20, 12));
}

#[test]
fn config_file_layers_under_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(
        &cfg,
        "grid = \"6x5\"\ndegree = 40\n[tolerances]\nharmonicity = 1e-5\n",
    )
    .unwrap();
    let o = run(&[
        "bjorling",
        "--input",
        "catenoid",
        "--config",
        cfg.to_str().unwrap(),
        "--degree",
        "44",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let c = &report(&o)["provenance"]["config"];
    assert_eq!(c["degree"], 44);
    assert_eq!(c["grid"], serde_json::json!([6, 5]));
    assert_eq!(c["tolerances"]["harmonicity"], 1e-5);
}

#[test]
fn usage_and_io_errors() {
    assert_eq!(code(&run(&["nonsense"])), 1);
    assert_eq!(
        code(&run(&["bjorling", "--grid", "0x4", "--input", "catenoid"])),
        1
    );
    assert_eq!(code(&run(&["bjorling"])), 1);
    assert_eq!(code(&run(&["--help"])), 0);

    let o = run(&["bjorling", "--input", "/nonexistent/curve.json"]);
    assert_eq!(code(&o), 3);
    assert_eq!(error(&o)["error"], "IoError");

    let o = run(&["bjorling", "--input", "catenoid", "--metric", "lorentz"]);
    assert_eq!(code(&o), 1);
    assert_eq!(error(&o)["field"], "metric");
}

#[test]
fn constant_curve_file_is_invalid() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("c.json");
    std::fs::write(
        &p,
        r#"{"center": 0.0, "radius": 1.0, "interval_half_width": 0.8, "components": [[[1,0]],[[1,0]],[[1,0]]]}"#,
    )
    .unwrap();
    let o = run(&["bjorling", "--input", p.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let e = error(&o);
    assert_eq!(e["error"], "ValidationFailed");
    assert_eq!(e["violations"][0]["kind"], "DegenerateTangent");
}

#[test]
fn malformed_json_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "{\n  \"center\": 0.0,\n  oops\n}").unwrap();
    let o = run(&["bjorling", "--input", p.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(
        error(&o)["message"].as_str().unwrap().contains("line 3"),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert!(Path::new(&p).exists());
}
