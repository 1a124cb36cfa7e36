use std::path::PathBuf;

use rbmod::cli::{algebra_document, run, Output};
use rbmod::fixtures::Corpus;
use rbmod::format::{AlgebraFile, Document, ModuleFile};
use rbmod::{AlgebraPresentation, Field, Matrix, RbModule, Side};
use serde_json::Value;

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rbmod-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn rbmod(args: &[&str]) -> Output {
    run(std::iter::once("rbmod").chain(args.iter().copied()))
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout))
}

fn corpus() -> Corpus {
    Corpus::bundled(Field::Rational).unwrap()
}

#[test]
fn check_accepts_a_valid_algebra_file() {
    let path = scratch("e1.json");
    std::fs::write(&path, algebra_document(&corpus(), "E(1)").unwrap()).unwrap();
    let out = rbmod(&["check", path.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
}

#[test]
fn check_rejects_a_corrupted_operator_with_a_witness() {
    let e = corpus().algebra("E(1)").unwrap().clone();
    let f = Field::Rational;
    let bad =
        AlgebraPresentation::new(e.algebra().clone(), f.one(), Matrix::identity(f, 2)).unwrap();
    let path = scratch("e1-identity.json");
    let doc = Document::Algebra(AlgebraFile::from_presentation(&bad));
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    let out = rbmod(&["--json", "check", path.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    let v = json(&out);
    assert_eq!(v["verdict"], false);
    assert!(
        v["reports"][0]["witnesses"]
            .as_array()
            .is_some_and(|w| !w.is_empty()),
        "{v}"
    );
}

#[test]
fn check_module_file_resolves_relative_algebra() {
    let c = corpus();
    let alg_path = scratch("e2.json");
    std::fs::write(&alg_path, algebra_document(&c, "E(2)").unwrap()).unwrap();
    let m = RbModule::regular(c.algebra("E(2)").unwrap().clone(), Side::Left);
    let doc = Document::Module(ModuleFile::from_module(&m, "e2.json"));
    let path = scratch("e2-left.json");
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    let out = rbmod(&["check", path.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
}

#[test]
fn malformed_input_exits_with_two() {
    let path = scratch("broken.json");
    std::fs::write(&path, "{ \"kind\": \"algebra\", \"dim\": ").unwrap();
    assert_eq!(rbmod(&["check", path.to_str().unwrap()]).code, 2);
    assert_eq!(rbmod(&["mc", "no-such-fixture"]).code, 2);
    assert_eq!(rbmod(&["--field", "fp:8", "mc", "E(1)/left"]).code, 2);
    assert_eq!(rbmod(&["frobnicate"]).code, 2);
}

#[test]
fn normal_form_of_qq_over_e1() {
    // Q·1·Q = P(1)Q − QP(1) − λQ = u1·Q·u0 − u0·Q·u1 − u0·Q·u0 at λ = 1.
    let out = rbmod(&["--json", "normal-form", "E(1)", r#"["Q","Q"]"#]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let nf = &json(&out)["normal_form"];
    assert_eq!(nf["scalar_part"], serde_json::json!(["0", "0"]));
    assert_eq!(nf["q_part"], serde_json::json!([["-1", "-1"], ["1", "0"]]));
}

#[test]
fn mc_of_e1_self_module_is_everything() {
    let out = rbmod(&["--json", "mc", "E(1)/left"]);
    assert_eq!(out.code, 0);
    let v = json(&out);
    assert_eq!(v["dim"], 2);
    assert_eq!(v["module_dim"], 2);
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn tensor_of_e1_self_modules_has_dimension_two() {
    let out = rbmod(&["--json", "tensor", "E(1)/right", "E(1)/left"]);
    assert_eq!(out.code, 0);
    assert_eq!(json(&out)["dim"], 2);
}

#[test]
fn filter_restricts_the_suite() {
    let out = rbmod(&["--json", "--filter", "tensor", "verify-paper"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v = json(&out);
    let entries = v["entries"].as_array().unwrap();
    assert!(!entries.is_empty());
    assert!(entries
        .iter()
        .all(|e| e["id"].as_str().unwrap().contains("tensor")));
}

#[test]
fn finite_field_suite_passes() {
    let out = rbmod(&[
        "--json",
        "--field",
        "fp:7",
        "--filter",
        "algebra.",
        "verify-paper",
    ]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert_eq!(json(&out)["field"], "fp:7");
}

#[test]
fn seed_is_recorded() {
    let out = rbmod(&[
        "--json",
        "--seed",
        "7",
        "--filter",
        "opring.multiply",
        "verify-paper",
    ]);
    assert_eq!(json(&out)["seed"], 7);
}

#[test]
fn remaining_commands_succeed() {
    for args in [
        &["hom", "E(1)/left", "E(1)/left"][..],
        &["free", "E(1)", "x", "y"],
        &["flat-evidence", "E(1)/right"],
        &["proj-lift", "E(1)/left"],
        &["confluence", "E(1)", "--max-q", "3"],
    ] {
        let out = rbmod(args);
        assert_eq!(out.code, 0, "{args:?}: {}{}", out.stdout, out.stderr);
    }
    // The regular module over E(1) is not injective; that is a verdict, not an error.
    assert_eq!(rbmod(&["baer", "E(1)/left"]).code, 1);
    assert_eq!(rbmod(&["--help"]).code, 0);
}
