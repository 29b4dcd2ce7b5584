use std::path::PathBuf;
use std::process::Command;

use containerlaws::cli::{doc_of_law, parse_structure, run, Document, Env, Structure};
use containerlaws::zoo::{self, Monoid};
use tempfile::TempDir;

fn cli(args: &[&str]) -> (i32, String, String) {
    run(std::iter::once("containerlaws").chain(args.iter().copied()))
}

fn write(dir: &TempDir, name: &str, doc: &Document) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, serde_json::to_string_pretty(doc).unwrap()).unwrap();
    path
}

fn exception_law_file(dir: &TempDir) -> PathBuf {
    let law = zoo::exception_law(1, zoo::writer(&Monoid::cyclic(2))).unwrap();
    write(dir, "exception-law.json", &doc_of_law(&law))
}

#[test]
fn check_monadic_text_golden() {
    let (code, out, err) = cli(&["check", "--monadic", "exception:1"]);
    assert_eq!(code, 0, "{err}");
    let expected = "\
monadic container: Verified (8/8)
  sigma-unit-l   verified               checked=2 deferred=0 blocked=0
  sigma-unit-r   verified               checked=2 deferred=0 blocked=0
  pr-unit-l      verified               checked=1 deferred=0 blocked=0
  pr-unit-r      verified               checked=1 deferred=0 blocked=0
  sigma-assoc    verified               checked=4 deferred=0 blocked=0
  pr1-assoc      verified               checked=1 deferred=0 blocked=0
  pr21-assoc     verified               checked=1 deferred=0 blocked=0
  pr22-assoc     verified               checked=1 deferred=0 blocked=0
";
    assert_eq!(out.trim_end(), expected.trim_end());
}

#[test]
fn check_json_lists_every_equation() {
    let (code, out, _) = cli(&["check", "--monadic", "writer:z2", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let eqs = v["equations"].as_array().unwrap();
    assert_eq!(eqs.len(), 8);
    assert!(eqs.iter().all(|e| e["status"] == "Verified"));
}

#[test]
fn list_is_bounded() {
    let (code, out, _) = cli(&["check", "--monadic", "list:2"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("monadic container: BoundedVerified"), "{out}");
}

#[test]
fn law_file_checks_and_passes_oracle() {
    let dir = TempDir::new().unwrap();
    let path = exception_law_file(&dir);
    let p = path.to_str().unwrap();
    let (code, out, err) = cli(&["check", "--law", p, "--format", "json"]);
    assert_eq!(code, 0, "{err}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["equations"].as_array().unwrap().len(), 18);
    let (code, _, err) = cli(&["oracle", "--law", p, "--sizes", "0..2"]);
    assert_eq!(code, 0, "{err}");
}

#[test]
fn broken_law_is_refuted() {
    let dir = TempDir::new().unwrap();
    let law = zoo::exception_law(1, zoo::writer(&Monoid::cyclic(2))).unwrap();
    let Document::MndMnd(mut doc) = doc_of_law(&law) else { panic!() };
    let row = doc.u1.iter_mut().find(|r| r.out == 0).unwrap();
    row.out = 1;
    let path = write(&dir, "broken.json", &Document::MndMnd(doc));
    let (code, out, _) = cli(&["check", "--law", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("Refuted"), "{out}");
}

#[test]
fn compose_then_extract_round_trips() {
    let dir = TempDir::new().unwrap();
    let law_path = exception_law_file(&dir);
    let (code, composite, err) = cli(&["compose", "--law", law_path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code, 0, "{err}");
    let cpath = dir.path().join("composite.json");
    std::fs::write(&cpath, &composite).unwrap();
    let (code, out, _) = cli(&["check", "--composite", cpath.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    let (code, extracted, err) = cli(&["extract-law", "--composite", cpath.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code, 0, "{err}");
    let original = std::fs::read_to_string(&law_path).unwrap();
    let env = Env::default();
    assert_eq!(
        parse_structure(&extracted, env).unwrap(),
        parse_structure(&original, env).unwrap()
    );
}

#[test]
fn search_finds_the_unique_exception_law() {
    let (code, out, _) = cli(&["search", "--inner", "exception:1", "--outer", "writer:z2", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "complete");
    assert_eq!(v["count"], 1);
    let law = serde_json::to_string(&v["laws"][0]).unwrap();
    let expected = zoo::exception_law(1, zoo::writer(&Monoid::cyclic(2))).unwrap();
    assert_eq!(parse_structure(&law, Env::default()).unwrap(), Structure::Law(expected));
}

#[test]
fn mixed_search() {
    let (code, out, _) = cli(&["search", "--kind", "mnd-dir", "--inner", "writer-dir:2", "--outer", "reader:2"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("complete: 1 law"), "{out}");
}

#[test]
fn refute_exit_codes() {
    let (code, out, _) = cli(&["refute", "--inner", "list", "--outer", "exception:2"]);
    assert_eq!(code, 1, "{out}");
    assert!(out.starts_with("bounded-unsat"));
    let (code, out, _) = cli(&["refute", "--inner", "list:2", "--outer", "exception:1"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("consistent"), "{out}");
}

#[test]
fn tiny_budget_exits_3() {
    let (code, out, _) = cli(&["search", "--inner", "writer:z2", "--outer", "writer:z2", "--budget", "1"]);
    assert_eq!(code, 3, "{out}");
}

#[test]
fn nogo_json() {
    let (code, out, _) = cli(&["nogo", "--inner", "list:3", "--outer", "exception:2", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["certificate"]["verdict"], "applicable");
    assert_eq!(v["certificate"]["constants"], serde_json::json!([1, 2]));
    assert_eq!(v["cross_check"]["verdict"], "bounded-unsat");
    assert_eq!(v["agree"], true);
}

#[test]
fn zoo_builtins_resolve() {
    for name in [
        "exception:2", "maybe", "writer:z3", "reader:2", "state:2", "list:2", "writer-dir:2", "reader-dir:z2",
    ] {
        let (code, out, err) = cli(&["zoo", name]);
        assert_eq!(code, 0, "{name}: {err}");
        assert!(!out.is_empty());
    }
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(cli(&["frobnicate"]).0, 2);
    assert_eq!(cli(&["check"]).0, 2);
    let (code, _, err) = cli(&["check", "--law", "/does/not/exist.json"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"));
    let (code, _, err) = cli(&["check", "--monadic", "nonsense"]);
    assert_eq!(code, 2);
    assert!(err.contains("neither a file nor a builtin"));
}

#[test]
fn malformed_document_names_the_field() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"kind":"container","shapes":["a"],"positions":[1,2]}"#).unwrap();
    let (code, _, err) = cli(&["zoo", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("bad.json"), "{err}");
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_containerlaws");
    let ok = Command::new(bin).args(["check", "--monadic", "reader:2"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("Verified (8/8)"));
    let bad = Command::new(bin).args(["check", "--monadic", "nope"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(!bad.stderr.is_empty());
}
