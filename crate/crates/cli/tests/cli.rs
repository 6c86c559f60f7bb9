use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use symknot::bracket::jones;
use symknot::homology::{h1_branched_cover, SeifertMatrix};
use symknot::refined::refined_w;
use symknot::Diagram;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name)
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("symknot-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symknot")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn validate_fixtures() {
    let o = run(&["validate", p(&fixture("d4.sud")), p(&fixture("d4prime.sud"))]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("16 crossings, 4 on the axis"));
    assert!(s.contains("14 crossings, 2 on the axis"));
}

#[test]
fn compare_pair_is_equal() {
    let o = run(&["compare", p(&fixture("d4.sud")), p(&fixture("d4prime.sud")), "--jones", "--refined"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.matches("EQUAL").count(), 2);
    assert!(!s.contains("DIFFER"));
}

#[test]
fn compare_spin() {
    let o = run(&["compare", p(&fixture("d4.sud")), p(&fixture("d4prime.sud")), "--spin", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("EQUAL"));
}

#[test]
fn compare_differ_exits_two() {
    let o = run(&["compare", p(&fixture("d4.sud")), p(&fixture("u1_kinks.sud")), "--jones"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("DIFFER"));
}

#[test]
fn homology_fixtures() {
    let o = run(&["homology", "--seifert", p(&fixture("d4_twist2.mat")), "--fold", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("7 7 7 7\n"));
    assert!(s.contains("resultant order 2401 (agrees)"));
    let o = run(&["homology", "--seifert", p(&fixture("d4prime_twist2.mat")), "--fold", "3"]);
    assert!(stdout(&o).starts_with("49 49\n"));
}

#[test]
fn twist_then_validate() {
    let out = scratch("d4_h2.sud");
    let o = run(&["twist", "--h", "2", p(&fixture("d4.sud")), "-o", p(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(&["validate", p(&out)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("20 crossings, 8 on the axis"));
    let d = Diagram::parse(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let lib = symknot::twist::twist(&Diagram::parse(&std::fs::read_to_string(fixture("d4.sud")).unwrap()).unwrap(), 2).unwrap();
    assert!(symknot::diagram::same_diagram(&d, &lib));
}

#[test]
fn errors_exit_one() {
    let o = run(&["validate", "/nonexistent/file.sud"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("/nonexistent/file.sud"));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let bad = scratch("bad.sud");
    std::fs::write(&bad, "not a diagram\n").unwrap();
    assert_eq!(run(&["invariant", "jones", p(&bad)]).status.code(), Some(1));
}

#[test]
fn json_is_deterministic() {
    let (x, y) = (fixture("d4.sud"), fixture("d4prime.sud"));
    let args = ["--json", "compare", p(&x), p(&y)];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
    assert_eq!(v[0]["verdict"], "EQUAL");
}

#[test]
fn invariants_match_the_library() {
    let d = Diagram::parse(&std::fs::read_to_string(fixture("d4prime.sud")).unwrap()).unwrap();
    let o = run(&["invariant", "jones", p(&fixture("d4prime.sud"))]);
    assert_eq!(stdout(&o).trim(), jones(&d).unwrap().to_canonical_string());
    let o = run(&["invariant", "refined", p(&fixture("d4prime.sud")), "--certify-laurent"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), refined_w(&d).unwrap().to_canonical_string());
    let v = SeifertMatrix::fixture("D4_twist2").unwrap();
    let o = run(&["--json", "homology", "--seifert", p(&fixture("d4_twist2.mat")), "--fold", "2"]);
    let j: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let lib: Vec<String> = h1_branched_cover(&v, 2).unwrap().factors.iter().map(|f| f.to_string()).collect();
    assert_eq!(j["factors"], serde_json::json!(lib));
}

#[test]
fn scramble_log_replays() {
    let out = scratch("scr.sud");
    let log = scratch("scr.json");
    let o = run(&[
        "moves", "scramble", p(&fixture("d4prime.sud")), "--class", "weak", "--length", "4", "--seed", "3", "-o", p(&out), "--log", p(&log),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let again = scratch("again.sud");
    let o = run(&["moves", "apply", p(&fixture("d4prime.sud")), "--log", p(&log), "-o", p(&again)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read(&out).unwrap(), std::fs::read(&again).unwrap());
    let o = run(&["compare", p(&fixture("d4prime.sud")), p(&out)]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn snf_and_expand() {
    let m = scratch("m.mat");
    std::fs::write(&m, "2 2\n2 4\n6 8\n").unwrap();
    let o = run(&["snf", p(&m)]);
    assert_eq!(stdout(&o).trim(), "2 4");
    let o = run(&["moves", "expand", "S4mn(1,1)"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}
