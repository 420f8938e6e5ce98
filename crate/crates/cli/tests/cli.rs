use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use steinersym::schedules::side_ratio_step;
use steinersym::Polygon;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_steinersym"))
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn same_loop(a: &Polygon, b: &Polygon, tol: f64) -> bool {
    a.len() == b.len() && (0..a.len()).any(|k| a.rotated_start(k).approx_eq_vertices(b, tol))
}

#[test]
fn triangle_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sym.json");
    let o = run(&[
        "symmetrize",
        "--polygon",
        &fixture("triangle.json"),
        "--line",
        &fixture("y_axis.json"),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let got = std::fs::read_to_string(&out).unwrap();
    let want = std::fs::read_to_string(fixture("triangle_sym_y.golden.json")).unwrap();
    assert_eq!(got, want);
    let stderr = String::from_utf8_lossy(&o.stderr);
    assert!(stderr.contains("area") && stderr.contains("diameter"));
}

#[test]
fn rectangle_about_its_axis_is_unchanged() {
    let o = run(&[
        "symmetrize",
        "--polygon",
        &fixture("rect_2x1.json"),
        "--line",
        &fixture("y_axis.json"),
    ]);
    assert!(o.status.success());
    let got: Polygon = serde_json::from_slice(&o.stdout).unwrap();
    let want: Polygon =
        serde_json::from_str(&std::fs::read_to_string(fixture("rect_2x1.json")).unwrap()).unwrap();
    assert!(same_loop(&got, &want, 1e-12));
}

#[test]
fn polygon_json_roundtrip_is_stable() {
    let p: Polygon =
        serde_json::from_str(&std::fs::read_to_string(fixture("triangle.json")).unwrap()).unwrap();
    let once = serde_json::to_string_pretty(&p).unwrap();
    let again: Polygon = serde_json::from_str(&once).unwrap();
    assert_eq!(serde_json::to_string_pretty(&again).unwrap(), once);
}

#[test]
fn malformed_json_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"vertices\": [[0, 0], [1, 0]").unwrap();
    let o = run(&[
        "symmetrize",
        "--polygon",
        bad.to_str().unwrap(),
        "--line",
        &fixture("y_axis.json"),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_slice(o.stderr.trim_ascii()).unwrap();
    assert_eq!(err["kind"], "json");
}

#[test]
fn invalid_polygon_exits_two() {
    let o = run(&[
        "symmetrize",
        "--polygon",
        "{\"vertices\": [[0, 0], [1, 0]]}",
        "--line",
        &fixture("y_axis.json"),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&[
        "exitprob",
        "--polygon",
        &fixture("rect_2x1.json"),
        "--alpha",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_slice(o.stderr.trim_ascii()).unwrap();
    assert_eq!(err["kind"], "domain");
}

#[test]
fn unknown_flag_is_a_usage_error() {
    assert_eq!(run(&["exitprob", "--bogus"]).status.code(), Some(2));
}

#[test]
fn outside_start_gives_zero() {
    let o = run(&[
        "exitprob",
        "--polygon",
        &fixture("rect_2x1.json"),
        "--x0",
        "5,5",
        "--n",
        "100",
    ]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let e = &v["estimates"][0];
    assert_eq!(e["p_hat"], 0.0);
    assert_eq!(e["std_err"], 0.0);
    assert_eq!(v["params"]["seed"], e["seed"]);
}

#[test]
fn exitprob_is_deterministic_and_self_describing() {
    let args = [
        "exitprob",
        "--polygon",
        &fixture("rect_2x1.json"),
        "--x0=-0.2,0.1",
        "--t-list",
        "0.05,0.1",
        "--m",
        "20",
        "--n",
        "3000",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    for key in ["polygon", "x0", "params", "alpha", "estimates"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    let e = v["estimates"].as_array().unwrap();
    assert!(e[0]["p_hat"].as_f64() >= e[1]["p_hat"].as_f64());
}

#[test]
fn exitprob_csv_has_one_row_per_horizon() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("curve.csv");
    let o = run(&[
        "exitprob",
        "--polygon",
        &fixture("rect_2x1.json"),
        "--t-list",
        "0.1,0.2,0.3",
        "--n",
        "500",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,p_hat,std_err,n,m,alpha,seed,bridge,x0_x,x0_y");
    assert_eq!(lines.len(), 4);
}

#[test]
fn schedule_ratio_column_follows_recurrence() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sched.csv");
    let o = run(&[
        "schedule",
        "--kind",
        "rectangle-square",
        "--polygon",
        &fixture("rect_2x1.json"),
        "--steps",
        "20",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(out).unwrap();
    let rows: Vec<Vec<String>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(String::from).collect())
        .collect();
    assert_eq!(rows.len(), 41);
    let mut c = 0.5;
    for stage in 0..=20 {
        let ratio: f64 = rows[2 * stage][4].parse().unwrap();
        assert!((ratio - c).abs() < 1e-9, "stage {stage}: {ratio} vs {c}");
        c = side_ratio_step(c).unwrap();
    }
    assert!(rows[1][4].is_empty());
}

#[test]
fn unknown_schedule_is_a_usage_error() {
    let o = run(&[
        "schedule",
        "--kind",
        "hexagon",
        "--polygon",
        &fixture("rect_2x1.json"),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_slice(o.stderr.trim_ascii()).unwrap();
    assert_eq!(err["kind"], "usage");
}

#[test]
fn eigen_reports_estimate() {
    let o = run(&[
        "eigen",
        "--polygon",
        "{\"vertices\": [[-0.5, -0.5], [0.5, -0.5], [0.5, 0.5], [-0.5, 0.5]]}",
        "--bridge",
        "--m",
        "100",
        "--n",
        "50000",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let lambda = v["estimate"]["lambda"].as_f64().unwrap();
    assert!(
        (lambda - std::f64::consts::PI.powi(2)).abs() < 2.0,
        "{lambda}"
    );
}

#[test]
fn default_verify_suite_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("verify.csv");
    let o = run(&["verify", "--out", out.to_str().unwrap()]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let text = std::fs::read_to_string(out).unwrap();
    assert!(text.starts_with("name,passed,statistic,threshold,seed\n"));
    assert!(text.lines().skip(1).all(|l| l.contains(",true,")));
}
