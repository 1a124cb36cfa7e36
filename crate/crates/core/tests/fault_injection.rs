use std::collections::BTreeSet;

use rbmod::fixtures::Corpus;
use rbmod::verify::{run_with_corpus, VerifyOptions};
use rbmod::{Field, Matrix};

#[test]
fn corrupted_operator_fails_exactly_its_own_entries() {
    let f = Field::Rational;
    let clean = Corpus::bundled(f).unwrap();
    let dirty = clean
        .with_corrupted_operator("E(1)", Matrix::identity(f, 2))
        .unwrap();
    let options = VerifyOptions::default();
    let before = run_with_corpus(&clean, &options).unwrap();
    assert!(before.overall);
    let after = run_with_corpus(&dirty, &options).unwrap();
    assert!(!after.overall);

    let failed: BTreeSet<&str> = after.failures().map(|e| e.fixture.as_str()).collect();
    assert_eq!(failed, BTreeSet::from(["E(1)"]), "{:?}", failed);
    assert!(after
        .entry("algebra.rota_baxter/E(1)")
        .is_some_and(|e| !e.verdict));
    let untouched: Vec<_> = after
        .entries
        .iter()
        .filter(|e| e.fixture != "E(1)")
        .collect();
    assert!(untouched.iter().all(|e| e.verdict));
}
