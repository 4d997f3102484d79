use std::fs;
use std::path::PathBuf;
use std::process::Command;

use stylic::cli::{run, EXIT_FAIL, EXIT_PASS, EXIT_RESOURCE, EXIT_USAGE, LIMITS_ENV};
use stylic::engine::MonoidTable;
use stylic::presentations::{Family, Presentation};
use stylic::verify::{Report, Verdict};

fn stylic(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("stylic").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("stylic-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn simon_examples() {
    let (code, out, _) = stylic(&["simon", "xyxzx", "xyzx", "--k", "2"]);
    assert_eq!((code, out.trim()), (EXIT_PASS, "equivalent"));
    let (code, out, _) = stylic(&["simon", "xyxzx", "xyzx", "--k", "3", "--witness"]);
    assert_eq!((code, out.trim()), (EXIT_FAIL, "distinct; witness xxx"));
}

#[test]
fn subwords_lists_shortlex() {
    let (code, out, _) = stylic(&["subwords", "xyx", "--k", "2"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(out.trim(), "1 x y xx xy yx");
}

#[test]
fn preset_records_round_trip() {
    let (code, out, _) = stylic(&["--format", "records", "preset", "--family", "kiselman", "--n", "3"]);
    assert_eq!(code, EXIT_PASS);
    let p = Presentation::from_json(&out).unwrap();
    assert_eq!(p, Family::Kiselman.presentation(3).unwrap());
}

#[test]
fn enumerate_check_and_jtrivial_through_files() {
    let pres = scratch("styl2.json");
    let table = scratch("styl2-table.json");
    let pres_s = pres.to_str().unwrap();
    let table_s = table.to_str().unwrap();

    assert_eq!(stylic(&["preset", "--family", "stylic", "--n", "2", "--output", pres_s]).0, EXIT_PASS);
    let (code, out, _) = stylic(&["enumerate", "--presentation", pres_s, "--engine", "both", "--output", table_s]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.starts_with("size 5"), "{out}");
    let t = MonoidTable::from_json(&fs::read_to_string(&table).unwrap()).unwrap();
    assert_eq!(t.size(), 5);

    assert_eq!(stylic(&["check", "xyxzx=xyzx", "--table", table_s]).0, EXIT_PASS);
    let (code, out, _) = stylic(&["check", "xy=yx", "--table", table_s]);
    assert_eq!(code, EXIT_FAIL);
    assert!(out.starts_with("fails; counterexample"), "{out}");
    assert_eq!(stylic(&["jtrivial", "--table", table_s]).0, EXIT_PASS);
}

#[test]
fn enumerate_records_parse_as_table() {
    let (code, out, _) = stylic(&["--format", "records", "enumerate", "--family", "catalan", "--n", "3"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(MonoidTable::from_json(&out).unwrap().size(), 14);
}

#[test]
fn normal_form_of_preset_word() {
    let (code, out, _) = stylic(&["nf", "a2.a2.a1", "--family", "stylic", "--n", "2"]);
    assert_eq!((code, out.trim()), (EXIT_PASS, "a2.a1"));
}

#[test]
fn check_with_stylic_criterion_reports_witness() {
    let (code, out, _) = stylic(&["check", "xyxzx=xyzx", "--stylic", "3"]);
    assert_eq!((code, out.trim()), (EXIT_FAIL, "fails in Styl_3; witness xxx"));
    assert_eq!(stylic(&["check", "xyxzx=xyzx", "--stylic", "2"]).0, EXIT_PASS);
}

#[test]
fn verify_records_parse_as_report() {
    let (code, out, _) = stylic(&["--format", "records", "verify", "lemma1", "--n", "2"]);
    assert_eq!(code, EXIT_PASS);
    let report = Report::from_json(&out).unwrap();
    assert_eq!(report.verdict, Verdict::Pass);
}

#[test]
fn verify_theorem_with_threads() {
    let (code, out, _) = stylic(&["--threads", "2", "verify", "theorem", "--n", "2", "--vars", "2", "--len", "3"]);
    assert_eq!(code, EXIT_PASS, "{out}");
}

#[test]
fn non_checkable_claim_exits_nonzero() {
    let (code, out, _) = stylic(&["--format", "records", "verify", "corollary2c"]);
    assert_eq!(code, EXIT_FAIL);
    assert_eq!(Report::from_json(&out).unwrap().verdict, Verdict::NotCheckable);
}

#[test]
fn derive_from_axiom_file() {
    let axioms = scratch("axioms.txt");
    fs::write(&axioms, "# stylic 2\nxyxzx=xyzx\nxx=x\n").unwrap();
    let path = axioms.to_str().unwrap();
    let (code, out, _) = stylic(&["--format", "records", "derive", "xyxyx=xyyx", "--axioms", path]);
    assert_eq!(code, EXIT_PASS);
    let value: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(value["derived"], true);
    assert_eq!(value["trace"].as_array().unwrap().len(), 1);
    let (code, out, _) = stylic(&["derive", "xy=yx", "--axioms", path, "--max-states", "2000"]);
    assert_eq!(code, EXIT_FAIL);
    assert!(out.starts_with("unknown"), "{out}");
}

#[test]
fn usage_errors() {
    assert_eq!(stylic(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(stylic(&["check", "xy", "--stylic", "2"]).0, EXIT_USAGE);
    assert_eq!(stylic(&["enumerate"]).0, EXIT_USAGE);
    let (code, _, err) = stylic(&["enumerate", "--presentation", "/nonexistent/p.json"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.starts_with("error:"));
}

#[test]
fn resource_limit_from_environment() {
    let status = Command::new(env!("CARGO_BIN_EXE_stylic"))
        .args(["enumerate", "--family", "kiselman", "--n", "3"])
        .env(LIMITS_ENV, "max_steps=10")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(EXIT_RESOURCE));
    let status = Command::new(env!("CARGO_BIN_EXE_stylic"))
        .args(["enumerate", "--family", "kiselman", "--n", "2"])
        .env(LIMITS_ENV, "bogus=1")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(EXIT_USAGE));
}
