use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn yolkkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_yolkkit"))
        .args(args)
        .output()
        .expect("run yolkkit")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn close(v: &Value, want: f64, tol: f64) -> bool {
    (v.as_f64().expect("number") - want).abs() <= tol
}

#[test]
fn nondegen_ratio() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "nd.csv", "2,0.5\n2,-0.5\n-2,0.5\n-2,-0.5\n1,0\n-1,0\n");
    let out = yolkkit(&["compute", &f]);
    assert_eq!(out.status.code(), Some(0));
    let r = stdout_json(&out);
    assert!(close(&r["ratio"], 0.447_213_595_5, 1e-6));
    assert!(close(&r["yolk"]["radius"], 1.0, 1e-5));
    assert_eq!(r["certificate"]["covered"], Value::Bool(true));
    assert!(r["support_size"].as_u64().unwrap() <= 3);
    assert!(r["timings_ms"].is_object());
    assert_eq!(r["instance_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn collinear_points_have_no_ratio() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c.csv", "0,0\n1,1\n2,2\n");
    let r = stdout_json(&yolkkit(&["compute", &f]));
    assert!(close(&r["yolk"]["radius"], 0.0, 1e-12));
    assert!(r["ratio"].is_null());
}

#[test]
fn equilateral_ratio_one() {
    let dir = TempDir::new().unwrap();
    let h = 3f64.sqrt() / 2.0;
    let f = write(&dir, "t.csv", &format!("0,0\n1,0\n0.5,{h}\n"));
    let r = stdout_json(&yolkkit(&["compute", &f]));
    assert!(close(&r["ratio"], 1.0, 1e-6));
    assert!(close(&r["yolk"]["radius"], 1.0 / (2.0 * 3f64.sqrt()), 1e-9));
}

#[test]
fn output_is_byte_stable_without_timings() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "p.csv", "# comment\n0.1,0.2\n0.9,0.3\n0.4,0.8\n0.7,0.7\n0.2,0.5\n");
    let a = yolkkit(&["compute", &f, "--no-timings"]);
    let b = yolkkit(&["compute", &f, "--no-timings"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(!String::from_utf8_lossy(&a.stdout).contains("timings"));
    let csv = yolkkit(&["compute", &f, "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert!(text.starts_with("instance_digest,"));
}

#[test]
fn parse_errors_exit_2_with_line_number() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.csv", "1,2\n3,x\n");
    let out = yolkkit(&["compute", &f]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let f = write(&dir, "ragged.csv", "1,2\n3,4,5\n");
    assert_eq!(yolkkit(&["compute", &f]).status.code(), Some(2));
}

#[test]
fn iteration_cap_exits_3() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "e.csv",
        "0.956,0.948\n0.057,0.085\n0.835,0.736\n0.670,0.308\n0.606,0.607\n0.581,0.158\n0.431,0.394\n0.723,0.995\n",
    );
    assert_eq!(yolkkit(&["compute", &f]).status.code(), Some(0));
    let out = yolkkit(&["compute", &f, "--max-iter", "1"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_4() {
    assert_eq!(yolkkit(&["frobnicate"]).status.code(), Some(4));
    assert_eq!(yolkkit(&["sweep", "oddr2ok"]).status.code(), Some(4));
    assert_eq!(yolkkit(&["generate", "nondegen", "--eps", "-1"]).status.code(), Some(4));
    assert_eq!(yolkkit(&["montecarlo", "--voters", "2", "--trials", "5"]).status.code(), Some(4));
    assert_eq!(yolkkit(&["--help"]).status.code(), Some(0));
}

#[test]
fn generate_then_compute_round_trip() {
    let dir = TempDir::new().unwrap();
    for (name, args, checks) in [
        ("nd.csv", vec!["nondegen", "--eps", "0.5"], vec![("lp_yolk_radius", "lp", 1e-6), ("yolk_radius", "yolk", 1e-5)]),
        (
            "ok.csv",
            vec!["oddr2ok", "--alpha", "1.728", "--w", "3", "--eps", "0.001"],
            vec![("yolk_radius", "yolk", 1e-6)],
        ),
    ] {
        let out = path(&dir, name);
        let mut full = vec!["generate"];
        full.extend(args);
        full.extend(["--out", &out]);
        assert_eq!(yolkkit(&full).status.code(), Some(0));
        let sidecar: Value =
            serde_json::from_str(&std::fs::read_to_string(format!("{out}.expected.json")).unwrap()).unwrap();
        let r = stdout_json(&yolkkit(&["compute", &out]));
        for (key, which, tol) in checks {
            let got = if which == "lp" { &r["lp_yolk"]["radius"] } else { &r["yolk"]["radius"] };
            let want = sidecar["expected"][key].as_f64().unwrap();
            assert!(close(got, want, tol), "{name} {key}: {got} vs {want}");
        }
    }
    let text = std::fs::read_to_string(path(&dir, "ok.csv")).unwrap();
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 5);
    let r = stdout_json(&yolkkit(&["compute", &path(&dir, "ok.csv")]));
    let bound: Value = serde_json::from_str(
        &std::fs::read_to_string(format!("{}.expected.json", path(&dir, "ok.csv"))).unwrap(),
    )
    .unwrap();
    assert!(r["lp_yolk"]["radius"].as_f64().unwrap() <= bound["expected"]["lp_yolk_radius_upper"].as_f64().unwrap() + 1e-6);
}

#[test]
fn lift_of_two_points() {
    let dir = TempDir::new().unwrap();
    let base = write(&dir, "base.csv", "0,0\n1,0\n");
    let out = path(&dir, "lift.csv");
    let status = yolkkit(&["generate", "lift", "--base", &base, "--noise", "0", "--out", &out]);
    assert_eq!(status.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows, ["0,0,0", "1,0,0"]);
    let r = stdout_json(&yolkkit(&["compute", &out]));
    assert_eq!(r["dim"], 3);
    assert!(r["yolk"].is_null());
    assert!(close(&r["lp_yolk"]["radius"], 0.0, 1e-12));
    assert_eq!(yolkkit(&["generate", "lift"]).status.code(), Some(4));
}

#[test]
fn sweep_ratio_approaches_two_thirds() {
    let out = yolkkit(&["sweep", "oddr2ok", "--alpha", "0.51pi,0.505pi,0.501pi", "--kappa", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    let headers = rdr.headers().unwrap().clone();
    let col = |name: &str| headers.iter().position(|h| h == name).unwrap();
    let ratios: Vec<f64> = rdr
        .records()
        .map(|r| r.unwrap()[col("ratio")].parse().unwrap())
        .collect();
    assert_eq!(ratios.len(), 3);
    assert!(ratios.windows(2).all(|w| w[1] < w[0]));
    assert!((ratios[2] - 2.0 / 3.0).abs() < 5e-3);
}

#[test]
fn sweep_records_row_errors() {
    let out = yolkkit(&["sweep", "nondegen", "--eps", "0.5,-1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = stdout_json(&out);
    assert_eq!(rows[0]["error"], "");
    assert!(close(&rows[0]["ratio"], 0.447_213_595_5, 1e-6));
    assert!(rows[1]["error"].as_str().unwrap().contains("eps"));
}

#[test]
fn montecarlo_is_deterministic_and_respects_the_bound() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (path(&dir, "a.csv"), path(&dir, "b.csv"));
    let args = |csv: &str| {
        yolkkit(&["montecarlo", "--voters", "5", "--trials", "300", "--seed", "7", "--csv", csv, "--no-timings"])
    };
    let ra = args(&a);
    let rb = args(&b);
    assert_eq!(ra.status.code(), Some(0));
    assert_eq!(ra.stdout, rb.stdout);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let s = stdout_json(&ra);
    assert!(s["min_ratio"].as_f64().unwrap() >= 0.5 - 1e-5);
    assert_eq!(s["odd_bound_holds"], Value::Bool(true));
    assert_eq!(s["completed"], 300);

    let tri = stdout_json(&yolkkit(&["montecarlo", "--voters", "3", "--trials", "100", "--dist", "normal"]));
    assert!(close(&tri["min_ratio"], 1.0, 1e-6));
    assert!(close(&tri["max_ratio"], 1.0, 1e-6));
}

#[test]
fn certify_reports_support_and_angles() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "p.csv", "0.1,0.2\n0.9,0.3\n0.4,0.8\n0.7,0.7\n0.2,0.5\n");
    let out = yolkkit(&["certify", &f]);
    assert_eq!(out.status.code(), Some(0));
    let r = stdout_json(&out);
    assert_eq!(r["covered"], Value::Bool(true));
    let support = r["support"].as_array().unwrap();
    assert!((1..=3).contains(&support.len()));
    let m = &r["mainhalf"];
    let (alpha, beta, eta) = (m["alpha"].as_f64().unwrap(), m["beta"].as_f64().unwrap(), m["eta"].as_f64().unwrap());
    let half = std::f64::consts::FRAC_PI_2;
    assert!(alpha >= half - 1e-9 && alpha <= half - eta + 1e-9);
    assert!(beta >= half - 1e-9 && beta <= std::f64::consts::PI + 1e-9);
}

fn count(svg: &str, needle: &str) -> usize {
    svg.matches(needle).count()
}

#[test]
fn plot_nondegen_and_single_point() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "nd.csv", "2,0.5\n2,-0.5\n-2,0.5\n-2,-0.5\n1,0\n-1,0\n");
    let svg_path = path(&dir, "nd.svg");
    assert_eq!(yolkkit(&["plot", &f, "--out", &svg_path]).status.code(), Some(0));
    let svg = std::fs::read_to_string(Path::new(&svg_path)).unwrap();
    assert!(svg.starts_with("<?xml"));
    assert_eq!(count(&svg, "<line "), 11);
    assert_eq!(count(&svg, r#"<circle id="yolk""#), 1);
    assert_eq!(count(&svg, r#"<circle id="lp-yolk""#), 1);
    let points = svg.split(r#"<g id="ideal-points""#).nth(1).unwrap();
    assert_eq!(count(points, "<circle "), 6);
    assert_eq!(svg, String::from_utf8(yolkkit(&["plot", &f]).stdout).unwrap());

    let one = write(&dir, "one.csv", "1,1\n");
    let svg = String::from_utf8(yolkkit(&["plot", &one]).stdout).unwrap();
    assert_eq!(count(&svg, r#"<path id="yolk""#), 1);
    let points = svg.split(r#"<g id="ideal-points""#).nth(1).unwrap();
    assert_eq!(count(points, "<circle "), 1);
}
