use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_perfect-cover"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write_family(dir: &Path, body: &str) -> String {
    let path = dir.join("family.txt");
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

fn construct(dir: &Path, family: &str, seed: u64, name: &str) -> String {
    let out = dir.join(name);
    let o = run(&[
        "construct",
        family,
        "--seed",
        &seed.to_string(),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    out.to_str().unwrap().to_string()
}

#[test]
fn analyze_reports_level() {
    let o = run(&["analyze", "catalog:SL25"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("level=2"), "{text}");
    assert!(text.contains("perfect=true"), "{text}");
}

#[test]
fn construct_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let fam = write_family(
        dir.path(),
        "group sl catalog:SL25\ngroup aff catalog:2^4:A5\nparams d=2 k=2\n",
    );
    let cert = construct(dir.path(), &fam, 7, "a.json");
    let o = run(&["verify", &cert]);
    assert!(o.status.success(), "{}{}", stdout(&o), stderr(&o));
}

#[test]
fn tampered_certificate_names_failing_step() {
    let dir = tempfile::tempdir().unwrap();
    let fam = write_family(dir.path(), "group a catalog:A5\nparams d=2 k=1\n");
    let cert = construct(dir.path(), &fam, 7, "a.json");
    let mut json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&cert).unwrap()).unwrap();
    json["root"]["step"]["t_generators"]
        .as_array_mut()
        .unwrap()
        .pop();
    fs::write(&cert, json.to_string()).unwrap();
    let o = run(&["verify", &cert]);
    assert_eq!(o.status.code(), Some(1));
    assert!(format!("{}{}", stdout(&o), stderr(&o)).contains("t_generators"));
}

#[test]
fn construction_is_deterministic_and_verify_is_read_only() {
    let dir = tempfile::tempdir().unwrap();
    let fam = write_family(
        dir.path(),
        "group a catalog:A5\ngroup b catalog:PSL27\nparams d=2 k=1\n",
    );
    let a = construct(dir.path(), &fam, 3, "a.json");
    let b = construct(dir.path(), &fam, 3, "b.json");
    let bytes = fs::read(&a).unwrap();
    assert_eq!(bytes, fs::read(&b).unwrap());
    let first = run(&["verify", &a]);
    let second = run(&["verify", &a]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(bytes, fs::read(&a).unwrap());
}

#[test]
fn parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let fam = write_family(dir.path(), "group a catalog:A5\nparams d=two k=1\n");
    let o = run(&["construct", &fam]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
    assert_eq!(run(&["analyze", "catalog:NOPE"]).status.code(), Some(2));
}

#[test]
fn cover_reports_classes() {
    let o = run(&["cover", "catalog:A5", "--element", "(1 2)(3 4)"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("e=2"), "{}", stdout(&o));
    assert_eq!(run(&["cover", "catalog:SL25"]).status.code(), Some(1));
}

#[test]
fn catalog_lists_entries() {
    let o = run(&["catalog"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("PSL27"));
}
