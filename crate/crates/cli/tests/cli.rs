use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn partcat(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_partcat")).args(args).output().unwrap();
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap(),
    )
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let (out, err, code) = partcat(&a);
    (serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out} {err}")), code)
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("partcat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn simplify_examples() {
    let (out, _, code) = partcat(&["simplify", ":abbacacaca"]);
    assert_eq!(code, 0);
    assert!(out.starts_with(":abbacacaca -> :aacacaca\n"), "{out}");
    let (v, _) = json(&["simplify", "--full", ":abbacacaca"]);
    assert_eq!(v["report"]["result"], ":ababab");
}

#[test]
fn member_yes_has_certificate() {
    let (v, code) = json(&["member", "--gen", "fatcross", "--target", ":aaaa"]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["verdict"], "yes");
    assert_eq!(v["report"]["replayed"], true);
    assert!(!v["report"]["certificate"].as_array().unwrap().is_empty());
}

#[test]
fn unknown_membership_is_inconclusive() {
    let (v, code) = json(&["member", "--gen", "fourblock", "--target", "fatcross"]);
    assert_eq!(code, 2);
    assert_eq!(v["outcome"], "inconclusive");
}

#[test]
fn cap_marks_closure_inconclusive() {
    let (v, code) = json(&["closure", "--gen", "halflib", "--cap", "3"]);
    assert_eq!(code, 2);
    assert_eq!(v["report"]["summary"]["saturated"], false);
}

#[test]
fn quotient_example() {
    let (v, code) = json(&["quotient", "--n", "2", "--relator", "(a1.a2)^3"]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["order"], 6);
    let (v, _) = json(&["quotient", "--dihedral", "4"]);
    assert_eq!(v["report"]["order"], 8);
}

#[test]
fn quotient_of_free_product_hits_the_coset_cap() {
    let (v, code) = json(&["quotient", "--n", "3", "--max-cosets", "20"]);
    assert_eq!(code, 2);
    assert_eq!(v["report"]["complete"], false);
}

#[test]
fn failing_facts_exit_one() {
    let path = scratch("bad-corpus.txt");
    std::fs::write(&path, "# wrong on purpose\nwrong.chain | simplify | :abbacacaca | :abab\n").unwrap();
    let (v, code) = json(&["facts", "--corpus", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["report"]["failed"], 1);
}

#[test]
fn facts_filter_by_prefix() {
    let (v, code) = json(&["facts", "--only", "simplify."]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["total"], 4);
}

#[test]
fn config_file_and_flag_precedence() {
    let path = scratch("run.toml");
    std::fs::write(&path, "point_bound = 6\nwork_bound = 10\nlength_bound = 6\n").unwrap();
    let cfg = path.to_str().unwrap();
    let (v, _) = json(&["closure", "--gen", "fourblock", "--config", cfg]);
    assert_eq!(v["report"]["config"]["point_bound"], 6);
    assert_eq!(v["report"]["config"]["work_bound"], 10);
    let (v, _) = json(&["closure", "--gen", "fourblock", "--config", cfg, "--work-bound", "12"]);
    assert_eq!(v["report"]["config"]["work_bound"], 12);
    assert_eq!(v["report"]["config"]["length_bound"], 6);
}

#[test]
fn bound_violations_are_errors() {
    let (_, err, code) = partcat(&["closure", "--point-bound", "9", "--work-bound", "8"]);
    assert_eq!(code, 1);
    assert!(err.contains("work bound"), "{err}");
    let (_, err, code) = partcat(&["word", "a:"]);
    assert_eq!(code, 0, "{err}");
    let (_, err, code) = partcat(&["word", "nonsense!"]);
    assert_eq!(code, 1);
    assert!(err.contains("bad partition"), "{err}");
    let (_, _, code) = partcat(&["closure", "--format", "yaml"]);
    assert_eq!(code, 1);
}

#[test]
fn out_writes_the_report() {
    let path = scratch("word.json");
    let (out, _, code) = partcat(&["word", "halflib", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["report"]["word"], "a1.a2.a3.a1.a2.a3");
}

#[test]
fn subgroup_image_matches_oracle() {
    let (v, code) = json(&["subgroup", "--gen", "halflib", "--gen", "fourblock", "--compare", "parity"]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["comparison"]["missing"], 0);
    assert_eq!(v["report"]["comparison"]["extra"], 0);
    let (v, code) = json(&["subgroup", "--gen", "halflib", "--gen", "fourblock", "--compare", "trivial"]);
    assert_eq!(code, 1);
    assert!(v["report"]["comparison"]["extra"].as_u64().unwrap() > 0);
}

#[test]
fn subgroup_queries_give_witnesses() {
    let (v, code) = json(&["subgroup", "--word", "a1.a2.a3", "--length-bound", "3", "--query", "a1"]);
    assert_eq!(code, 0);
    let q = &v["report"]["queries"][0];
    assert_eq!(q["member"], true);
    assert!(q["witness"].is_array());
}

#[test]
fn intertwiner_rep_file() {
    let path = scratch("rep.txt");
    std::fs::write(&path, "# n dim\n2 1\n1\n0\n0\n-1\n").unwrap();
    let (v, code) = json(&["intertwiner", "--rep", path.to_str().unwrap(), "--transpose"]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["n"], 2);
    assert!(v["report"]["intertwiners"].as_array().unwrap().iter().all(|r| r["holds"] == true));
    let (v, code) = json(&["intertwiner", "--rep", "counterexample", "--relation", "iv"]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["relations"][0]["holds"], false);
    assert!(!v["report"]["relations"][0]["failures"].as_array().unwrap().is_empty());
}
