use std::path::Path;
use std::process::{Command, Output};

use mixjoin::joincore::builtin_bundles;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mixjoin")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn write_bundle(dir: &Path, name: &str, m: Option<Vec<i64>>) -> String {
    let mut b = builtin_bundles()["cusp-join"].clone();
    if let Some(m) = m {
        b.link = b.link.with_multiplicities(m).unwrap();
    }
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(&b).unwrap()).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn analyze_cusp() {
    let o = run(&["analyze", "--expr", "z1^2+z2^3"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("convenient: true"), "{s}");
    assert!(s.contains("vertices 2, edges 1"), "{s}");
    assert!(s.contains("VERIFIED") && !s.contains("REFUTED") && !s.contains("UNKNOWN"), "{s}");
}

#[test]
fn analyze_vanishing_axes() {
    let o = run(&["analyze", "--expr", "z1*z2^2*bar(z2)"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("I_v = [{1} {2}]"), "{s}");
    assert!(s.contains("I = {1}: VERIFIED") && s.contains("I = {2}: VERIFIED"), "{s}");
    let o = run(&["analyze", "--expr", "z1*z2*bar(z2)"]);
    assert!(stdout(&o).contains("I = {1}: REFUTED"));
}

#[test]
fn analyze_rejects_bad_input() {
    assert_eq!(code(&run(&["analyze", "--expr", "0"])), 2);
    assert_eq!(code(&run(&["analyze", "--expr", "z1^2+"])), 2);
    assert_eq!(code(&run(&["analyze", "--expr", "z3"])), 2);
    assert_eq!(code(&run(&["analyze"])), 2);
}

#[test]
fn join_builtin_bundles() {
    let o = run(&["join", "--bundle", "builtin:cusp-join"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("zeta = lambda^4 + lambda^2 + 1 "), "{s}");
    assert!(s.contains("n1 = 3, n2 = 2"), "{s}");
    let o = run(&["join", "--bundle", "builtin:hopf-join"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("zeta = 1 "));
    assert_eq!(code(&run(&["join", "--bundle", "builtin:nope"])), 2);
}

#[test]
fn join_files_and_flags() {
    let dir = tempfile::tempdir().unwrap();
    let good = write_bundle(dir.path(), "good.json", None);
    let out = dir.path().join("report.json");
    let o = run(&["join", "--bundle", &good, "--json", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let written = std::fs::read_to_string(&out).unwrap();
    assert_eq!(written, stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&written).unwrap();
    assert_eq!(v["report"]["join"]["zeta_text"], "lambda^4 + lambda^2 + 1");
    assert!(v["config"]["join"]["count"]["budget"].is_u64());

    let bad = write_bundle(dir.path(), "bad.json", Some(vec![1, 0, 1]));
    let o = run(&["join", "--bundle", &bad]);
    assert_eq!(code(&o), 4);
    assert!(stdout(&o).contains("[FAIL] axis-rule"));
    assert_eq!(code(&run(&["join", "--bundle", &bad, "--strict-axis"])), 2);

    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{\"g\": \"z1\"}").unwrap();
    assert_eq!(code(&run(&["join", "--bundle", broken.to_str().unwrap()])), 2);
    let missing = dir.path().join("missing.json");
    assert_eq!(code(&run(&["join", "--bundle", missing.to_str().unwrap()])), 2);
}

#[test]
fn count_cases() {
    let o = run(&["count", "--expr", "z1^2+z2^3", "--axis", "1"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("count: 3 [formula]"), "{s}");

    let o = run(&["count", "--vars", "1", "--expr", "z1*(z1+2*bar(z1))"]);
    assert_eq!(code(&o), 4);
    let s = stdout(&o);
    assert!(s.contains("mismatch-report") && s.contains("formula: 2") && s.contains("oracle: 4"), "{s}");

    let o = run(&["count", "--expr", "z1^2 + z2*(z2+2*bar(z2))", "--axis", "1", "--json"]);
    assert_eq!(code(&o), 4);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["formula"], 2);
    assert_eq!(v["report"]["oracle"]["lower"], 4);

    let o = run(&["count", "--expr", "z1*(z2^2+2*z2*bar(z2))", "--axis", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("undefined"));
    assert_eq!(code(&run(&["count", "--expr", "z1", "--axis", "3"])), 2);
}

#[test]
fn output_is_deterministic() {
    let args = ["count", "--vars", "1", "--expr", "z1^5 + z1^2*bar(z1)^4", "--json", "--seed", "7"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["config"]["seed"], 7);
    let args = ["analyze", "--expr", "z1*z2*bar(z2) + z1^3", "--json", "--seed", "11", "--budget", "400"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["config"]["degeneracy"]["max_evals"], 400);
}

#[test]
fn fox_trivial_words() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fox.json");
    std::fs::write(
        &path,
        r#"{"mu": 2, "words": [[[1,1]], [[2,1]]],
            "representation": {"b1": [[0,1],[1,0]], "b2": [[1,0],[0,-1]], "h": [[1,0],[0,1]]}}"#,
    )
    .unwrap();
    let o = run(&["fox", "--bundle", path.to_str().unwrap(), "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let h = v["report"]["h_der"].as_array().unwrap();
    for (i, row) in h.iter().enumerate() {
        for (j, x) in row.as_array().unwrap().iter().enumerate() {
            assert_eq!(x.as_i64().unwrap(), i64::from(i == j));
        }
    }
    assert_eq!(v["report"]["ladder_commutes"], true);
}
