use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_merodiff")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_exit_codes() {
    let ok = run(&["verify", "E3"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("r,value,masked,n"));
    // the literal sign claim for E1 does not hold
    assert_eq!(run(&["verify", "E1"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "E3", "E1"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "E9"]).status.code(), Some(2));
    assert_eq!(run(&["verify"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
}

#[test]
fn verify_with_config_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("e2.cfg");
    std::fs::write(&cfg, "# circle decay\nfunction = cossqrt\nseed = 3\npoints = 30\n").unwrap();
    let out = dir.path().join("report.json");
    let o = run(&["verify", "E2", "--config", cfg.to_str().unwrap(), "--format", "json", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["experiment"], "E2");
    assert_eq!(v["rows"].as_array().unwrap().len(), 30);
    assert_eq!(v["parameters"]["seed"], "3");

    std::fs::write(&cfg, "colour = blue\n").unwrap();
    assert_eq!(run(&["verify", "E2", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["verify", "E2", "--config", "/nonexistent/x.cfg"]).status.code(), Some(2));
}

#[test]
fn growth_reports_order() {
    let o = run(&["growth", "exp(z^1)", "--rmin", "10", "--rmax", "1e5", "--points", "20"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let order: f64 = text.lines().next().unwrap().strip_prefix("# order=").unwrap().parse().unwrap();
    assert!((order - 1.0).abs() < 0.05);
    assert!(text.contains("r,log_mu,nu,log_m"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 21);
    let bad = run(&["growth", "poly(1,0,)"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("column 10"));
}

#[test]
fn nevanlinna_json() {
    let o = run(&["nevanlinna", "rat(zeros=[2];poles=[3])", "--r", "100", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["n_poles"], 1);
    let n = v["N_poles"].as_f64().unwrap();
    assert!((n - (100.0f64 / 3.0).ln()).abs() < 1e-12);
}

#[test]
fn polygon_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("eq.txt");
    std::fs::write(&path, "(z)*D2 + (-1)*D0\n").unwrap();
    let o = run(&["polygon", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["candidates_below_one"], serde_json::json!(["1/2"]));
    assert_eq!(v["gate"], "Candidates");
    std::fs::write(&path, "Q[0] = -z\nQ[1] = 1\n").unwrap();
    let o = run(&["polygon", path.to_str().unwrap(), "--form", "shift"]);
    assert!(stdout(&o).contains("gate,OrderAtLeastOne"));
    std::fs::write(&path, "P[0] = z +\n").unwrap();
    assert_eq!(run(&["polygon", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn opseries_and_delta() {
    let o = run(&["opseries", "--k", "2", "--order", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l.starts_with("4,7/12,")));
    assert_eq!(run(&["opseries", "--k", "0", "--order", "4"]).status.code(), Some(2));
    assert_eq!(run(&["opseries", "--k", "3", "--order", "99"]).status.code(), Some(2));

    let o = run(&["delta", "exp(z^1)", "--z", "0", "--eta", "1", "--k", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let d3 = v["rows"][2]["delta"][0].as_f64().unwrap();
    assert!((d3 - (std::f64::consts::E - 1.0).powi(3)).abs() < 1e-13);
    assert_eq!(run(&["delta", "cossqrt", "--z", "1+", "--k", "1"]).status.code(), Some(2));
}

#[test]
fn csv_output_is_deterministic() {
    let a = stdout(&run(&["verify", "E2"]));
    let b = stdout(&run(&["verify", "E2"]));
    assert_eq!(a, b);
    assert!(a.lines().any(|l| l == "r,value,masked,theta"));
}
