use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::algebra::{Algebra, AlgebraPresentation};
use crate::error::Error;
use crate::freemod::free_rb_module;
use crate::linalg::{vector, Field, Matrix, Subspace};
use crate::opring::{random_vector, OpRing};
use crate::rbmod::{direct_sum, hom_space, Bimodule, ModuleMap, RbModule, Side};

fn q() -> Field {
    Field::Rational
}

fn e(lam: i64) -> Arc<AlgebraPresentation> {
    Arc::new(AlgebraPresentation::example_e(&q().from_i64(lam)))
}

fn scalar(lam: i64) -> Arc<AlgebraPresentation> {
    let l = q().from_i64(lam);
    Arc::new(AlgebraPresentation::scalar_operator(
        Algebra::unitized_line(&l),
        &l,
    ))
}

fn dual_numbers_zero_operator() -> Arc<AlgebraPresentation> {
    Arc::new(AlgebraPresentation::zero_operator(
        Algebra::base_field(q()),
        &q().zero(),
    ))
}

fn regular(alg: &Arc<AlgebraPresentation>, side: Side) -> RbModule {
    RbModule::regular(alg.clone(), side).verify().unwrap()
}

#[test]
fn example_e_tensor_square_has_dimension_two() {
    for lam in [0, 1, 2] {
        let alg = e(lam);
        let t = tensor_product(&regular(&alg, Side::Right), &regular(&alg, Side::Left)).unwrap();
        assert_eq!(t.dim(), 2, "λ = {lam}");
        assert!(t.bilinearity_report().passed());
    }
}

#[test]
fn tensor_with_zero_module_is_zero() {
    let alg = e(1);
    let zero = RbModule::zero(alg.clone(), Side::Left).verify().unwrap();
    let t = tensor_product(&regular(&alg, Side::Right), &zero).unwrap();
    assert_eq!(t.dim(), 0);
}

#[test]
fn tensor_requires_matching_sides() {
    let alg = e(1);
    let left = regular(&alg, Side::Left);
    assert!(tensor_product(&left, &left).is_err());
}

#[test]
fn tensor_distributes_over_direct_sums() {
    let alg = e(1);
    let ring = OpRing::new(alg.clone());
    let m = regular(&alg, Side::Right);
    let n1 = regular(&alg, Side::Left);
    let n2 = ring.left_module().unwrap();
    let sum = direct_sum(&alg, Side::Left, &[n1.clone(), n2.clone()])
        .unwrap()
        .module;
    let whole = tensor_product(&m, &sum).unwrap().dim();
    let parts = tensor_product(&m, &n1).unwrap().dim() + tensor_product(&m, &n2).unwrap().dim();
    assert_eq!(whole, parts);
}

#[test]
fn bilinear_maps_factor_uniquely() {
    let alg = e(2);
    let (m, n) = (
        regular(&alg, Side::Right),
        OpRing::new(alg.clone()).left_module().unwrap(),
    );
    let t = tensor_product(&m, &n).unwrap();
    let functionals = t.bilinear_functionals();
    assert_eq!(functionals.dim(), t.dim());
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let rows: Vec<_> = (0..3)
            .map(|_| functionals.combine(&random_vector(q(), &mut rng, functionals.dim(), 3)))
            .collect();
        let b = Matrix::from_rows(q(), rows).unwrap();
        let (factor, freedom) = t.factor(&b).unwrap();
        let factor = factor.expect("bilinear map factors");
        assert_eq!(freedom, 0);
        for a in 0..m.dim() {
            for c in 0..n.dim() {
                let (x, y) = (m.basis(a), n.basis(c));
                assert_eq!(
                    factor.mul_vec(&t.iota(&x, &y)),
                    b.mul_vec(&vector::kron(&x, &y))
                );
            }
        }
    }
}

#[test]
fn non_bilinear_map_does_not_factor() {
    let alg = e(1);
    let t = tensor_product(&regular(&alg, Side::Right), &regular(&alg, Side::Left)).unwrap();
    let b = Matrix::from_i64(q(), &[&[0, 1, 0, 0]]);
    assert!(t.factor(&b).unwrap().0.is_none());
}

#[test]
fn induced_maps_respect_identity_and_composition() {
    let alg = e(1);
    let m = regular(&alg, Side::Right);
    let n = regular(&alg, Side::Left);
    let ring = OpRing::new(alg.clone());
    let d = ring.left_module().unwrap();
    let tn = tensor_product(&m, &n).unwrap();
    let td = tensor_product(&m, &d).unwrap();
    let id = induced_map(&tn, &tn, &ModuleMap::identity(&n)).unwrap();
    assert!(id.is_identity());
    let free = free_rb_module(&alg, vec!["x".into()]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let g = free
            .universal_map(&[random_vector(q(), &mut rng, 2, 3)], &n)
            .unwrap();
        let h = hom_space(&n, &d).unwrap();
        for h in h.basis_maps() {
            let hg = h.compose(&g).unwrap();
            let lhs = induced_map(&td, &td, &ModuleMap::identity(&d)).unwrap();
            assert!(lhs.is_identity());
            let composed = induced_map(&td, &td, &hg).unwrap();
            let stepwise = induced_map(&tn, &td, &h)
                .unwrap()
                .mul(&induced_map(&td, &tn, &g).unwrap());
            assert_eq!(composed, stepwise);
        }
    }
}

#[test]
fn scalar_extension_gives_modules() {
    let alg = e(1);
    let b = Bimodule::regular(alg.clone()).verify().unwrap();
    let n = regular(&alg, Side::Left);
    let ext = scalar_extension(&b, &n).unwrap();
    assert!(ext.module.check().passed());
    let ext = scalar_extension_right(&regular(&alg, Side::Right), &b).unwrap();
    assert!(ext.module.check().passed());
}

#[test]
fn adjunction_is_bijective() {
    for alg in [e(1), scalar(2)] {
        let m = regular(&alg, Side::Right);
        let b = Bimodule::regular(alg.clone()).verify().unwrap();
        for l in [
            regular(&alg, Side::Right),
            OpRing::new(alg.clone()).right_module().unwrap(),
        ] {
            let r = adjunction_check(&m, &b, &l).unwrap();
            assert!(r.report.passed(), "{}", r.report.render());
            assert_eq!(r.lhs_dim, r.rhs_dim);
        }
    }
}

#[test]
fn tensoring_is_right_exact() {
    let alg = e(1);
    let m = regular(&alg, Side::Right);
    let n = regular(&alg, Side::Left);
    let sub = Subspace::span(q(), 2, [vector::unit(q(), 2, 1)]);
    let (_, inclusion) = n.submodule(&sub).unwrap();
    let (_, projection) = n.quotient(&sub).unwrap();
    assert!(right_exactness_check(&m, &inclusion, &projection)
        .unwrap()
        .passed());
}

fn point_module(alg: &Arc<AlgebraPresentation>, side: Side) -> RbModule {
    RbModule::new(
        alg.clone(),
        side,
        vec![Matrix::identity(q(), 1)],
        Matrix::zeros(q(), 1, 1),
    )
    .unwrap()
    .verify()
    .unwrap()
}

#[test]
fn zero_operator_witnesses_non_flatness_and_non_projectivity() {
    let alg = dual_numbers_zero_operator();
    let free = free_rb_module(&alg, vec!["x".into()]).unwrap();
    let v = point_module(&alg, Side::Left);
    let to_q = ModuleMap::new(
        v.clone(),
        free.module().clone(),
        Matrix::from_i64(q(), &[&[0], &[1]]),
    )
    .unwrap();
    let mono = Mono::new("k → F, 1 ↦ Q", to_q).unwrap();
    let k_right = point_module(&alg, Side::Right);
    let report = flatness_evidence(&k_right, &[mono]).unwrap();
    assert!(!report.verdict);
    assert_eq!(report.entries[0].rank_after, 0);
    assert!(projective_summand_split(&v).unwrap().is_none());
}

#[test]
fn mono_requires_injectivity() {
    let alg = e(1);
    let n = regular(&alg, Side::Left);
    let zero = ModuleMap::zero(&n, &n).unwrap();
    assert!(matches!(
        Mono::new("zero", zero),
        Err(Error::Precondition(_))
    ));
}

fn right_catalog(alg: &Arc<AlgebraPresentation>) -> Vec<Mono> {
    let targets = vec![
        ("R".to_string(), regular(alg, Side::Right)),
        (
            "D".to_string(),
            OpRing::new(alg.clone()).right_module().unwrap(),
        ),
    ];
    mono_catalog(&targets, 4).unwrap()
}

fn left_catalog(alg: &Arc<AlgebraPresentation>) -> Vec<Mono> {
    let targets = vec![
        ("R".to_string(), regular(alg, Side::Left)),
        (
            "D".to_string(),
            OpRing::new(alg.clone()).left_module().unwrap(),
        ),
    ];
    mono_catalog(&targets, 4).unwrap()
}

#[test]
fn free_modules_are_flat_on_the_catalog() {
    for alg in [e(1), scalar(1), dual_numbers_zero_operator()] {
        let monos = right_catalog(&alg);
        assert!(monos.len() > 8);
        let free = free_rb_module(&alg, vec!["x".into(), "y".into()]).unwrap();
        let report = flatness_evidence(free.module(), &monos).unwrap();
        assert!(report.verdict, "{}", report.summary());
    }
}

#[test]
fn direct_sums_are_flat_iff_summands_are() {
    let alg = dual_numbers_zero_operator();
    let monos = left_catalog(&alg);
    let free = OpRing::new(alg.clone()).right_module().unwrap();
    let k = point_module(&alg, Side::Right);
    let good = direct_sum_flatness_check(&alg, Side::Right, &[free.clone(), free.clone()], &monos)
        .unwrap();
    assert!(good.passed(), "{}", good.render());
    let mixed = direct_sum_flatness_check(&alg, Side::Right, &[free, k], &monos).unwrap();
    assert!(mixed.passed(), "{}", mixed.render());
    let whole = flatness_evidence(
        &direct_sum(&alg, Side::Right, &[point_module(&alg, Side::Right)])
            .unwrap()
            .module,
        &monos,
    )
    .unwrap();
    assert!(!whole.verdict);
}

#[test]
fn free_modules_lift_against_epis() {
    let alg = e(1);
    let free = free_rb_module(&alg, vec!["x".into()]).unwrap();
    let fm = free.module();
    let m = regular(&alg, Side::Left);
    let sum = direct_sum(&alg, Side::Left, &[m.clone(), fm.clone()]).unwrap();
    let epi = sum.projections[0].clone();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let g = free
            .universal_map(&[random_vector(q(), &mut rng, 2, 3)], &m)
            .unwrap();
        let lift = projective_lift(fm, &epi, &g)
            .unwrap()
            .expect("free modules are projective");
        assert_eq!(epi.matrix().mul(lift.matrix()), *g.matrix());
    }
    assert!(matches!(
        projective_lift(
            fm,
            &ModuleMap::zero(&sum.module, &m).unwrap(),
            &ModuleMap::zero(fm, &m).unwrap()
        ),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn summand_split_of_free_and_zero_modules() {
    let alg = e(1);
    let free = free_rb_module(&alg, vec!["x".into()]).unwrap();
    let split = projective_summand_split(free.module())
        .unwrap()
        .expect("free is projective");
    assert!(split.report.passed(), "{}", split.report.render());
    assert_eq!(split.image.dim(), free.module().dim());
    let zero = RbModule::zero(alg, Side::Left).verify().unwrap();
    let split = projective_summand_split(&zero).unwrap().unwrap();
    assert_eq!(split.summary().free_dim, 0);
}

#[test]
fn baer_test_on_zero_and_example_e() {
    let alg = e(1);
    let ring = OpRing::new(alg.clone());
    let ideals = op_ring_ideals(&ring).unwrap();
    assert!(ideals.len() >= 3);
    let zero = RbModule::zero(alg.clone(), Side::Left).verify().unwrap();
    assert!(baer_extension_test(&zero, &ring, &ideals).unwrap().verdict);
    let report = baer_extension_test(&ring.left_module().unwrap(), &ring, &ideals[..1]).unwrap();
    assert!(report.verdict);
    let report = baer_extension_test(&regular(&alg, Side::Left), &ring, &ideals).unwrap();
    assert_eq!(report.entries.len(), ideals.len());
}

fn asserted() -> EtaHypothesis {
    EtaHypothesis::Asserted("P = −λ·id makes the inclusion an operated module map".into())
}

#[test]
fn flat_iso_holds_for_scalar_operator_self_module() {
    let alg = scalar(2);
    let m = regular(&alg, Side::Right);
    let evidence = flatness_evidence(&m, &left_catalog(&alg)).unwrap();
    assert!(evidence.verdict, "{}", evidence.summary());
    let report = flat_iso_check(&m, &asserted(), &evidence).unwrap();
    assert!(report.passed(), "{}", report.render());
    assert!(matches!(
        flat_iso_check(&m, &EtaHypothesis::Unset, &evidence),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn flat_iso_fails_for_free_module_over_scalar_operator() {
    let alg = scalar(2);
    let d = OpRing::new(alg.clone()).right_module().unwrap();
    let evidence = flatness_evidence(&d, &left_catalog(&alg)).unwrap();
    assert!(evidence.verdict, "{}", evidence.summary());
    let report = flat_iso_check(&d, &asserted(), &evidence).unwrap();
    assert!(!report.passed());
}

#[test]
fn flat_iso_is_trivial_on_zero_module() {
    let alg = scalar(1);
    let z = RbModule::zero(alg.clone(), Side::Right).verify().unwrap();
    let evidence = flatness_evidence(&z, &left_catalog(&alg)).unwrap();
    assert!(flat_iso_check(&z, &asserted(), &evidence).unwrap().passed());
}
