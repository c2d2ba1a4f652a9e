use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stolarsky")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    serde_json::from_slice(&run(&all).stdout).unwrap()
}

fn csv_file(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("stolarsky-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn mean_examples() {
    assert_eq!(stdout(&run(&["mean", "--alpha", "2", "--a", "1", "--b", "3"])), "2\n");
    assert_eq!(stdout(&run(&["mean", "--alpha", "-1", "--a", "1", "--b", "4"])), "2\n");
    let v = json(&["mean", "--alpha", "0", "--a", "1", "--b", "2"]);
    let l = 1.0 / 2f64.ln();
    assert!((v["results"]["mean"].as_f64().unwrap() - l).abs() <= 1e-15);
    assert_eq!(v["command"], "mean");
}

#[test]
fn bad_input_exits_2() {
    assert_eq!(run(&["mean", "--alpha", "1", "--a", "0", "--b", "2"]).status.code(), Some(2));
    assert_eq!(run(&["mean", "--alpha", "nan", "--a", "1", "--b", "2"]).status.code(), Some(2));
    assert_eq!(run(&["mean", "--alpha", "1"]).status.code(), Some(2));
    let o = run(&["abscissa", "-f", "x +* 2", "--a", "1", "--b", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("syntax error at byte"));
}

#[test]
fn abscissa_json() {
    let v = json(&["abscissa", "-f", "1/x", "--a", "1", "--b", "4", "--alpha", "-1"]);
    let xs = v["results"]["abscissas"].as_array().unwrap();
    assert_eq!(xs.len(), 1);
    assert!((xs[0].as_f64().unwrap() - 2.0).abs() <= 1e-9);
}

#[test]
fn verify_default_passes_and_zero_tol_fails() {
    let o = run(&["verify"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 8);
    assert!(!text.contains("FAIL"));
    let o = run(&["verify", "--tol", "0", "--trials", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("violation"));
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--seed", "42", "--trials", "20", "--format", "json"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["verify", "--seed", "43", "--trials", "20", "--format", "json"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn csv_headers() {
    let first = |args: &[&str]| stdout(&run(args)).lines().next().unwrap().to_string();
    assert_eq!(first(&["verify", "--trials", "2", "--format", "csv"]), "alpha,trials,max_fde_rel,max_ode_rel,status");
    let p = csv_file("h.csv", "1,3,2\n");
    assert_eq!(first(&["fit-alpha", "--input", p.to_str().unwrap(), "--format", "csv"]), "row,a,b,c,alpha");
}

#[test]
fn fit_alpha_rows() {
    let ok = csv_file("ok.csv", "# a,b,c\n1,3,2\n");
    let o = run(&["fit-alpha", "--input", ok.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("median,,,,2\n"), "{}", stdout(&o));

    let outside = csv_file("outside.csv", "1,3,2\n1,3,5\n");
    let o = run(&["fit-alpha", "--input", outside.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("row 2"));

    let malformed = csv_file("malformed.csv", "1,3,2\n1,3\n");
    let o = run(&["fit-alpha", "--input", malformed.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("row 2"));
}

#[test]
fn proofcheck_json() {
    let v = json(&["proofcheck", "--alpha", "-1", "--kmax", "14"]);
    assert_eq!(v["command"], "proofcheck");
    assert!(v["diagnostics"].is_array());
    assert_eq!(run(&["proofcheck", "--alpha", "1"]).status.code(), Some(6));
}
