use std::path::Path;
use std::process::{Command, Output};

fn hullforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hullforge"))
        .args(args)
        .env_remove("HULLFORGE_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn construct(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name);
    let p = path.to_str().unwrap().to_string();
    let mut all = vec!["construct"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", &p]);
    let o = hullforge(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    p
}

#[test]
fn construct_prints_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let o = hullforge(&["construct", "--q", "7", "--family", "cosets", "--s", "16", "--t", "1", "--degG", "18", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "[33,19,15]_49");
    assert!(std::fs::read_to_string(path).unwrap().contains("\"cosets\""));
}

#[test]
fn construct_to_stdout_in_text() {
    let o = hullforge(&["construct", "--q", "3", "--family", "subgroup", "--n", "5", "--degG", "1", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("hullforge-code 1\nq 3\nfamily subgroup n=5\n"));
}

#[test]
fn construction_precondition_is_a_usage_error() {
    let o = hullforge(&["construct", "--q", "7", "--family", "subgroup", "--n", "26", "--degG", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Corollary 3.3"));
    let o = hullforge(&["construct", "--q", "7", "--family", "cosets", "--s", "16", "--degG", "3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bad_flags_exit_one() {
    assert_eq!(hullforge(&["construct", "--q", "7"]).status.code(), Some(1));
    assert_eq!(hullforge(&["table", "5"]).status.code(), Some(1));
    assert_eq!(hullforge(&["nope"]).status.code(), Some(1));
    assert_eq!(hullforge(&["--help"]).status.code(), Some(0));
}

#[test]
fn hull_report_for_table0_row() {
    let dir = tempfile::tempdir().unwrap();
    let p = construct(dir.path(), "s.txt", &["--q", "9", "--family", "subgroup", "--n", "41", "--degG", "13", "--format", "text"]);
    let o = hullforge(&["hull", &p]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("L(N)       {0,1,5,9,10,14,18,19,23}  (9)"), "{out}");
    assert!(out.contains("exact ell  9"));
    assert!(out.contains("chain      holds"));
}

#[test]
fn eaqecc_examples() {
    let dir = tempfile::tempdir().unwrap();
    let p = construct(dir.path(), "s.json", &["--q", "7", "--family", "subgroup", "--n", "25", "--degG", "11"]);
    let o = hullforge(&["eaqecc", &p, "--dual"]);
    assert!(stdout(&o).starts_with("[[25,6,13;5]]_7*"), "{}", stdout(&o));

    let p = construct(dir.path(), "a.json", &["--q", "4", "--family", "affine", "--n0", "3", "--degG", "4"]);
    assert!(stdout(&hullforge(&["eaqecc", &p])).starts_with("[[12,2,8;4]]_4 "));
    assert!(stdout(&hullforge(&["eaqecc", &p, "--dual"])).starts_with("[[12,4,6;2]]_4*"));
    assert_eq!(hullforge(&["eaqecc", &p, "--reduce-to", "4"]).status.code(), Some(1));

    let o = hullforge(&["eaqecc", &p, "--dual", "--propagate", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 4);
}

#[test]
fn eaqecc_with_reduction() {
    let dir = tempfile::tempdir().unwrap();
    let p = construct(dir.path(), "c.json", &["--q", "7", "--family", "cosets", "--s", "16", "--t", "1", "--degG", "19"]);
    let o = hullforge(&["eaqecc", &p, "--reduce-to", "6"]);
    assert!(stdout(&o).starts_with("[[33,14,14;7]]_7*"), "{}", stdout(&o));
}

#[test]
fn tables_are_deterministic() {
    let a = stdout(&hullforge(&["table", "1", "--format", "csv"]));
    let b = stdout(&hullforge(&["table", "1", "--format", "csv"]));
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 51);
    assert!(a.contains("\"(5,4,2,1)\",6,,\"[[20,6,9;2]]_5*\""));
    let t0 = stdout(&hullforge(&["table", "0"]));
    assert!(t0.contains("| (7,3,1,3,4) | {0,1,7,8} | {0,1,4,7,8,11} | [25,11,15]_49 | 4 | 6 |"), "{t0}");
    let t2 = stdout(&hullforge(&["table", "2", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&t2).unwrap();
    assert_eq!(v["derived"].as_array().unwrap().len(), 7);
}

#[test]
fn verify_fixtures_and_hull_of_fixture_document() {
    let o = hullforge(&["verify", "--samples", "2000"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("a1 PASS") && stdout(&o).contains("a2 PASS"));

    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("a2.json");
    let o = hullforge(&["verify", "a2", "--samples", "100", "--out", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&hullforge(&["hull", p.to_str().unwrap()])).contains("exact ell  4"));
    assert_eq!(hullforge(&["verify", "a3"]).status.code(), Some(1));
}

#[test]
fn tampered_document_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let p = construct(dir.path(), "s.txt", &["--q", "5", "--family", "subgroup", "--n", "13", "--degG", "4", "--format", "text"]);
    let text = std::fs::read_to_string(&p).unwrap();
    std::fs::write(&p, text.replace("family subgroup n=13", "family subgroup n=7")).unwrap();
    assert_eq!(hullforge(&["hull", &p]).status.code(), Some(1));
}

#[test]
fn sweep_small_fields() {
    let o = hullforge(&["sweep", "--q", "3,4", "--mds"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.lines().skip(1).all(|l| l.contains(",ok,")));
}

#[test]
fn budget_env_skips_minors() {
    let dir = tempfile::tempdir().unwrap();
    let p = construct(dir.path(), "s.json", &["--q", "3", "--family", "subgroup", "--n", "5", "--degG", "1"]);
    let o = Command::new(env!("CARGO_BIN_EXE_hullforge"))
        .args(["hull", &p, "--mds"])
        .env("HULLFORGE_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("skipped (budget)"));
    assert!(stdout(&hullforge(&["hull", &p, "--mds"])).contains("mds        verified"));
}
