use std::process::{Command, Output};

fn logknot(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_logknot"));
    c.args(args).env_remove("LOGKNOT_CAP").env_remove("LOGKNOT_PRECISION");
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn json_schema() {
    let o = logknot(&["compute", "--p", "3", "--knot", "figure8", "--format", "json"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["p"], 3);
    assert_eq!(v["knot"]["strands"], 3);
    assert_eq!(v["a"].as_array().unwrap().len(), 4);
    assert_eq!(v["b_plus"].as_array().unwrap().len(), 2);
    assert_eq!(v["b_minus"].as_array().unwrap().len(), 2);
    assert!(v["a"][1]["approx"]["re"].is_f64());
}

#[test]
fn cap_flag_beats_environment() {
    let args = ["compute", "--p", "3", "--knot", "figure8"];
    assert_eq!(logknot(&args, &[("LOGKNOT_CAP", "10")]).status.code(), Some(4));
    let mut with_flag = args.to_vec();
    with_flag.extend(["--cap", "20000"]);
    assert_eq!(logknot(&with_flag, &[("LOGKNOT_CAP", "10")]).status.code(), Some(0));
}

#[test]
fn exit_codes() {
    assert_eq!(logknot(&["compute", "--p", "3", "--braid", "s1", "--strands", "3"], &[]).status.code(), Some(3));
    assert_eq!(logknot(&["compute", "--p", "3", "--braid", "q1", "--strands", "2"], &[]).status.code(), Some(2));
    assert_eq!(logknot(&["bogus"], &[]).status.code(), Some(2));
    let o = logknot(&["compute", "--p", "3", "--knot", "figure8", "--cap", "26"], &[]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
}

#[test]
fn jones_matches_bracket() {
    let o = logknot(&["jones", "--p", "7", "--knot", "cinquefoil", "--format", "json"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let d = (v["value"]["approx"]["re"].as_f64().unwrap() - v["oracle"]["re"].as_f64().unwrap()).abs()
        + (v["value"]["approx"]["im"].as_f64().unwrap() - v["oracle"]["im"].as_f64().unwrap()).abs();
    assert!(d < 1e-10, "{d}");
}

#[test]
fn alexander_csv_and_precision_env() {
    let args = ["alexander", "--p", "2", "--knot", "trefoil", "--lambda", "0.3", "--derivative", "--format", "csv"];
    let a = logknot(&args, &[("LOGKNOT_PRECISION", "96")]);
    let b = logknot(&args, &[]);
    assert_eq!(a.status.code(), Some(0));
    let (a, b) = (stdout(&a), stdout(&b));
    assert!(a.starts_with("quantity,re,im\nvalue,"));
    assert!(a.contains("\nderivative,"));
    let first = |s: &str| s.lines().nth(1).unwrap().split(',').nth(1).unwrap().parse::<f64>().unwrap();
    assert!((first(&a) - first(&b)).abs() < 1e-12);
}

#[test]
fn verify_reports_each_suite() {
    let o = logknot(&["verify", "--p", "2", "--suite", "connected-sum", "--suite", "symmetry"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.starts_with("PASS connected-sum")));
    assert!(out.lines().any(|l| l.starts_with("PASS symmetry")));
}
