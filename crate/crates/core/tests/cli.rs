use std::path::Path;
use std::process::{Command, Output};

fn homco(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homco")).args(args).output().unwrap()
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn check_reports_each_axiom() {
    let o = homco(&["check", &fixture("HomLie-d2-Q-hand.hcs")]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("cojacobi PASS"), "{s}");
    assert!(s.contains("verdict: PASS"));
    let o = homco(&["check", &fixture("HomLie-d2-Q-hand.hcs"), "--axioms", "skew"]);
    assert!(!stdout(&o).contains("cojacobi"));
    assert_eq!(homco(&["check", &fixture("HomLie-d2-Q-hand.hcs"), "--axioms", "c9"]).status.code(), Some(2));
}

#[test]
fn construct_writes_a_checkable_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("lie.hcs").display().to_string();
    let o = homco(&["construct", "commutator_cobracket", &fixture("HomCoassoc-d2-Q-hand.hcs"), "-o", &out]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("kind = HomLie\n"));
    assert_eq!(homco(&["check", &out]).status.code(), Some(0));
    let piped = homco(&["construct", "commutator_cobracket", &fixture("HomCoassoc-d2-Q-hand.hcs")]);
    assert_eq!(stdout(&piped), text);
}

#[test]
fn construct_parameter_errors() {
    let f = fixture("HomCoassoc-d2-Q-hand.hcs");
    assert_eq!(homco(&["construct", "power_twist", &f, "--param", "n=2", "--param", "zz=1"]).status.code(), Some(2));
    assert_eq!(homco(&["construct", "no_such_rule", &f]).status.code(), Some(2));
    assert_eq!(homco(&["construct", "tridend_sum", &f]).status.code(), Some(2));
}

#[test]
fn dualize_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c.hcs").display().to_string();
    let a = dir.path().join("a.hcs").display().to_string();
    let src = fixture("HomTridendriformAlgebra-d2-F5-1.hcs");
    assert_eq!(homco(&["dualize", &src, "-o", &c]).status.code(), Some(0));
    assert!(std::fs::read_to_string(&c).unwrap().starts_with("kind = HomTridendriform\n"));
    assert_eq!(homco(&["dualize", &c, "-o", &a]).status.code(), Some(0));
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&src).unwrap());
}

#[test]
fn oracle_agrees_with_check() {
    let o = homco(&["oracle", &fixture("HomLie-d2-Q-hand.hcs"), "--axiom", "cojacobi"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("cojacobi PASS"));
    let e = homco(&["oracle", &fixture("HomLie-d2-Q-hand.hcs"), "--axiom", "coasso"]);
    assert_eq!(e.status.code(), Some(2));
}

#[test]
fn search_writes_witness_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w");
    let o = homco(&[
        "search", "HomLie", "--dim", "1", "--field", "F3", "--mode", "exhaustive", "--out",
        &out.display().to_string(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let mut names: Vec<String> =
        std::fs::read_dir(&out).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    names.sort();
    assert_eq!(names, ["HomLie-d1-F3-1-0.hcs", "HomLie-d1-F3-1-1.hcs", "HomLie-d1-F3-1-2.hcs"]);
    for n in names {
        assert_eq!(homco(&["check", &out.join(n).display().to_string()]).status.code(), Some(0));
    }
    let q = homco(&["search", "HomLie", "--dim", "1", "--field", "Q", "--mode", "exhaustive", "--out", "x"]);
    assert_eq!(q.status.code(), Some(2));
}

#[test]
fn verify_theorem_writes_its_ledger() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().display().to_string();
    let args = ["verify-theorem", "T-am1", "--trials", "5", "--out", &d];
    let o = homco(&args);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("campaign T-am1\n"));
    assert!(s.ends_with("verdict: PASS\n"));
    let ledger = std::fs::read_to_string(dir.path().join("discrepancies.txt")).unwrap();
    assert!(ledger.lines().all(|l| l.starts_with("T-am1 | field=F5 | seed=1 |")), "{ledger}");
    assert_eq!(stdout(&homco(&args)), s);
    assert_eq!(std::fs::read_to_string(dir.path().join("discrepancies.txt")).unwrap(), ledger);
    assert_eq!(homco(&["verify-theorem", "T-nope", "--out", &d]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(homco(&["nonsense"]).status.code(), Some(2));
    assert_eq!(homco(&["check", "/no/such/file.hcs"]).status.code(), Some(2));
}
