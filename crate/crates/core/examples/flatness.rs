//! Flatness evidence, projective splittings, a non-flat module and M⊗R ≅ M.

use std::sync::Arc;

use rbmod::freemod::free_rb_module;
use rbmod::opring::OpRing;
use rbmod::tensorflat::{
    flat_iso_check, flatness_evidence, projective_summand_split, standard_catalog, EtaHypothesis,
    Mono,
};
use rbmod::{Algebra, AlgebraPresentation, Field, Matrix, ModuleMap, RbModule, Side};

fn main() -> rbmod::Result<()> {
    let q = Field::Rational;
    let e = Arc::new(AlgebraPresentation::example_e(&q.one()));
    let free = free_rb_module(&e, vec!["x".into()])?;
    let catalog = standard_catalog(&e, Side::Right)?;
    println!(
        "free module: {}",
        flatness_evidence(free.module(), &catalog)?.summary()
    );
    let split = projective_summand_split(free.module())?.expect("free modules are projective");
    println!("splitting: {:?}", split.summary());

    let k = Arc::new(AlgebraPresentation::zero_operator(
        Algebra::base_field(q),
        &q.zero(),
    ));
    let v = RbModule::regular(k.clone(), Side::Left).verify()?;
    let fk = free_rb_module(&k, vec!["x".into()])?;
    let to_q = ModuleMap::new(
        v.clone(),
        fk.module().clone(),
        Matrix::from_i64(q, &[&[0], &[1]]),
    )?;
    let witness = flatness_evidence(
        &RbModule::regular(k, Side::Right).verify()?,
        &[Mono::new("1 ↦ Q", to_q)?],
    )?;
    println!("k over k[Q]/Q²: {}", witness.summary());
    println!(
        "k over k[Q]/Q² projective: {}",
        projective_summand_split(&v)?.is_some()
    );

    let two = q.from_i64(2);
    let s = Arc::new(AlgebraPresentation::scalar_operator(
        Algebra::unitized_line(&two),
        &two,
    ));
    let eta = EtaHypothesis::Asserted("P = −λ·id".into());
    for (name, m) in [
        (
            "self-module",
            RbModule::regular(s.clone(), Side::Right).verify()?,
        ),
        ("free right module", OpRing::new(s.clone()).right_module()?),
    ] {
        let evidence = flatness_evidence(&m, &standard_catalog(&s, Side::Left)?)?;
        let report = flat_iso_check(&m, &eta, &evidence)?;
        println!("M⊗R ≅ M for the {name}: {}", report.passed());
    }
    Ok(())
}
