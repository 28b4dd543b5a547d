use std::path::Path;
use std::process::{Command, Output};

fn taut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_taut")).args(args).env_remove("TAUT_CACHE_DIR").output().expect("runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn integrate_lines_in_p3() {
    let o = taut(&["integrate", "--n", "3", "--d", "1", "k2^4 k2^2*k3 k3^2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "2 1 1\n");
}

#[test]
fn integrate_accepts_separate_arguments_and_json() {
    let o = taut(&["integrate", "--n", "3", "--d", "1", "--format", "json", "k2^4", "k2^2*k3", "k3^2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["normalized"], serde_json::json!(["2", "1", "1"]));
    assert_eq!(v["ratios"], serde_json::json!(["1", "1/2", "1/2"]));
}

#[test]
fn integrate_rejects_wrong_degree() {
    let o = taut(&["integrate", "--n", "3", "--d", "1", "k2^3 k3^2"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn integrate_rejects_unknown_variable() {
    let o = taut(&["integrate", "--n", "3", "--d", "1", "k5^2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn present_shapes() {
    let o = taut(&["present", "--n", "1", "--d", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["vars"].as_array().unwrap().len(), 4);
    assert_eq!(v["dim"], 2);
    let rel = &v["relations"][0];
    assert!(rel["label"].is_string());
    let term = &rel["poly"][0];
    assert_eq!(term.as_array().unwrap().len(), 3);

    let o = taut(&["present", "--n", "3", "--d", "1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["vars"].as_array().unwrap().len(), 2);
}

#[test]
fn present_is_deterministic() {
    let a = taut(&["present", "--n", "2", "--d", "3"]);
    let b = taut(&["present", "--n", "2", "--d", "3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn bad_arguments_exit_2() {
    assert_eq!(taut(&["present", "--n", "0", "--d", "2"]).status.code(), Some(2));
    assert_eq!(taut(&["present", "--d", "2"]).status.code(), Some(2));
    assert_eq!(taut(&["hilbert", "--n", "1", "--d", "2", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(taut(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
}

#[test]
fn as_printed_relation_five_fails_validation() {
    let o = taut(&["present", "--n", "1", "--d", "3", "--rel5", "as-printed"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("L3.1-5"));
}

#[test]
fn hilbert_tables() {
    let o = taut(&["hilbert", "--n", "1", "--d", "2", "--invariant", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let inv: Vec<&str> = text.lines().skip(1).take(3).map(|l| l.rsplit(',').next().unwrap()).collect();
    assert_eq!(inv, ["1", "1", "1"]);
    assert!(text.contains("# duality,true"));

    let o = taut(&["hilbert", "--n", "3", "--d", "1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let q: Vec<u64> = v["rows"].as_array().unwrap().iter().map(|r| r["quotient"].as_u64().unwrap()).collect();
    assert_eq!(q, [1, 1, 2, 1, 1, 0, 0]);
    assert!(v.get("warning").is_none());

    let o = taut(&["hilbert", "--n", "3", "--d", "1", "--max-degree", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["warning"].is_string());
}

fn cache_files(dir: &Path) -> Vec<std::path::PathBuf> {
    std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect()
}

#[test]
fn cache_hit_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["hilbert", "--n", "2", "--d", "2", "--invariant", "--cache-dir", d];
    let cold = taut(&args);
    assert_eq!(cold.status.code(), Some(0));
    assert_eq!(cache_files(dir.path()).len(), 1);
    let warm = taut(&args);
    assert_eq!(cold.stdout, warm.stdout);
    let uncached = taut(&args[..6]);
    assert_eq!(cold.stdout, uncached.stdout);

    let iargs = ["integrate", "--n", "3", "--d", "1", "--cache-dir", d, "k2^4 k2^2*k3 k3^2"];
    let a = taut(&iargs);
    let b = taut(&iargs);
    assert_eq!(stdout(&a), "2 1 1\n");
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn corrupt_cache_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["hilbert", "--n", "1", "--d", "3", "--cache-dir", d];
    let cold = taut(&args);
    for f in cache_files(dir.path()) {
        std::fs::write(f, "{not json").unwrap();
    }
    let again = taut(&args);
    assert_eq!(cold.stdout, again.stdout);
}

#[test]
fn verify_suites() {
    let o = taut(&["verify", "--suite", "grassmannian"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passing_rel5"], "derived");
    assert!(v["checks"][0]["millis"].is_number());

    let o = taut(&["verify", "--suite", "lines", "--format", "csv", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("id,name,passed,millis,detail\n6,"));
}

#[test]
fn corrupted_build_fails_verification() {
    // Printed coefficients lose the socle at (1,3).
    let o = taut(&["verify", "--suite", "duality", "--coeffs", "printed"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["checks"][0]["passed"], false);
    assert!(v["passing_rel5"].is_null());
}
