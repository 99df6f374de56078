use std::path::PathBuf;
use std::process::{Command, Output};

use whitney::json::{read_tower, write_tower};
use whitney_core::group::group_structure;
use whitney_core::Bounds;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_whitney")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

#[test]
fn groups_match_library() {
    let o = run(&["groups", "--order", "1", "--labels", "3"]);
    assert!(o.status.success());
    let expected = group_structure(1, 3, &Bounds::default()).unwrap().to_string();
    assert_eq!(stdout(&o).trim(), expected);

    let o = run(&["--json", "groups", "--order", "2", "--labels", "4", "--nonrepeating"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["free_rank"], 2);
    assert_eq!(v["torsion"], serde_json::json!([]));
}

#[test]
fn canon_identifies_antisymmetric_inputs() {
    let a = run(&["canon", "-(2,1)"]);
    let b = run(&["canon", "+(1,2)"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    let t = run(&["canon", "inner(1,(1,2),)"]);
    assert!(stdout(&t).contains("(2-torsion)"));
}

#[test]
fn certify_then_verify_zero_tower() {
    let tower = fixture("zero_order2.json");
    let o = run(&["certify", tower.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let cert = scratch("zero_cert.json");
    std::fs::write(&cert, stdout(&o)).unwrap();
    let v = run(&["verify", tower.to_str().unwrap(), cert.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0));
    assert!(stdout(&v).starts_with("valid:"));
}

#[test]
fn tampered_certificate_is_invalid() {
    let tower = fixture("zero_order2.json");
    let o = run(&["certify", tower.to_str().unwrap()]);
    let mut moves: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    moves.pop();
    let cert = scratch("short_cert.json");
    std::fs::write(&cert, serde_json::to_string(&moves).unwrap()).unwrap();
    let v = run(&["verify", tower.to_str().unwrap(), cert.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(1));
    assert!(stdout(&v).starts_with("invalid:"));
}

#[test]
fn nonzero_tower_is_obstructed() {
    let o = run(&["certify", fixture("nonzero_order1.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(whitney::EXIT_OBSTRUCTED));
    assert!(stdout(&o).starts_with("obstruction: "));
}

#[test]
fn bing_tower_invariant() {
    let o = run(&["tau", fixture("bing_order2.json").to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("inner(1,(2,(3,4)),)"), "{text}");
    assert!(text.contains("vanishes: false"));
}

#[test]
fn seeded_runs_are_deterministic() {
    let args = ["bch", "--order", "2", "--labels", "3", "--seed", "7"];
    let a = run(&args);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&run(&args)));
    let path = scratch("seeded.json");
    std::fs::write(&path, stdout(&a)).unwrap();
    let c = run(&["certify", path.to_str().unwrap()]);
    assert_eq!(c.status.code(), Some(0));
}

#[test]
fn tower_json_round_trips() {
    let text = std::fs::read_to_string(fixture("zero_order2.json")).unwrap();
    let model = read_tower(&text).unwrap();
    let again = read_tower(&write_tower(&model)).unwrap();
    assert_eq!(again.tau(), model.tau());
    assert_eq!(write_tower(&again), write_tower(&model));
}

#[test]
fn glue_of_a_tower_with_itself_vanishes() {
    let bing = fixture("bing_order2.json");
    let out = scratch("glued.json");
    let o = run(&["--out", out.to_str().unwrap(), "glue", bing.to_str().unwrap(), bing.to_str().unwrap()]);
    assert!(o.status.success());
    let t = run(&["tau", out.to_str().unwrap()]);
    assert!(stdout(&t).contains("vanishes: true"));
}

#[test]
fn bad_input_exits_one() {
    let o = run(&["canon", "inner(1,(2,"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
    let o = run(&["tau", "/nonexistent/tower.json"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["groups", "--order", "9", "--labels", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn rank_reports_lie_image() {
    let o = run(&["rank", "--order", "0", "--labels", "2"]);
    assert_eq!(stdout(&o).trim(), "3");
}
