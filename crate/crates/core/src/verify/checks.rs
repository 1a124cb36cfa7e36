use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{report_witness, Check, Outcome};
use crate::algebra::AlgebraPresentation;
use crate::error::{Error, Result};
use crate::fixtures::{AlgebraKind, Corpus};
use crate::freemod::{free_rb_module, restricted_free, FreeOperated, DEFAULT_N_MAX};
use crate::linalg::{vector, Field, Matrix, Vector};
use crate::opring::{
    check_action_consistency, check_associativity, check_local_confluence,
    check_multiply_consistency, check_ring_action, random_vector, OpRing, Token, Word,
};
use crate::rbmod::{
    check_mc_full_consequence, direct_sum, hom_module, hom_space, module_constants, Bimodule,
    HomStructure, ModuleMap, RbModule, Side,
};
use crate::report::AxiomReport;
use crate::tensorflat::{
    adjunction_check, baer_extension_test, direct_sum_flatness_check, flat_iso_check,
    flatness_evidence, induced_map, op_ring_ideals, projective_lift, projective_summand_split,
    right_exactness_check, standard_catalog, tensor_product, EtaHypothesis, Mono,
};

const WORD_TRIALS: usize = 200;
const MULTIPLY_PAIRS: usize = 500;
const MAX_SEGMENTS: usize = 6;
const FREE_MAPS: usize = 50;
const RELATION_LENGTH: usize = 4;
const BILINEAR_MAPS: usize = 20;
const EPIS: usize = 10;
const FALSIFIABILITY_TRIALS: usize = 50;

/// Largest algebra dimension whose operator ring gets the randomized suite.
const OPRING_DIM: usize = 3;
/// Largest algebra dimension for the tensor, flatness and Baer suites.
const TENSOR_DIM: usize = 2;

fn num(f: Field, x: usize) -> Vector {
    vec![f.from_i64(x as i64)]
}

fn regular(alg: &Arc<AlgebraPresentation>, side: Side) -> Result<RbModule> {
    RbModule::regular(alg.clone(), side).verify()
}

fn algebra_checks(corpus: &Corpus, out: &mut Vec<Check>) {
    for a in corpus.algebras() {
        let alg = a.algebra.clone();
        out.push(Check::new(
            format!("algebra.rota_baxter/{}", a.name),
            "Rota-Baxter identity of weight λ",
            &a.name,
            move |_| Ok(Outcome::from_report(&alg.check_rota_baxter())),
        ));
        let alg = a.algebra.clone();
        if a.kind == AlgebraKind::Integration {
            out.push(Check::new(
                format!("algebra.right_self_identity.refuted/{}", a.name),
                "right self-module criterion fails for integration",
                &a.name,
                move |_| {
                    let report = alg.check_right_self_module();
                    let at_unit = report
                        .witnesses
                        .iter()
                        .any(|w| w.instance.contains("(x^0, x^0)"));
                    Ok(Outcome::new(
                        !report.passed() && at_unit,
                        report_witness(&report),
                    ))
                },
            ));
        } else {
            out.push(Check::new(
                format!("algebra.right_self_identity/{}", a.name),
                "right self-module criterion 2P(P(r)s) + λP(rs) + λP(r)s = 0",
                &a.name,
                move |_| Ok(Outcome::from_report(&alg.check_right_self_module())),
            ));
        }
    }
    for a in corpus.algebras_of(AlgebraKind::ExampleE) {
        let alg = a.algebra.clone();
        out.push(Check::new(
            format!("algebra.example_e_values/{}", a.name),
            "two-dimensional example: products, operator and right criterion by hand",
            &a.name,
            move |_| Ok(Outcome::from_report(&example_e_by_hand(&alg))),
        ));
        let alg = a.algebra.clone();
        out.push(Check::new(
            format!("algebra.falsifiable/{}", a.name),
            "the Rota-Baxter checker rejects perturbed operators",
            &a.name,
            move |rng| falsifiability(&alg, rng),
        ));
    }
}

/// Hand-expanded values on `E(λ)` compared against the library.
fn example_e_by_hand(alg: &AlgebraPresentation) -> AxiomReport {
    let f = alg.field();
    let lam = alg.weight().clone();
    let (z, o) = (f.zero(), f.one());
    let u0 = vec![o.clone(), z.clone()];
    let u1 = vec![z.clone(), o.clone()];
    let mut report = AxiomReport::new("E(λ) values expanded by hand");
    report.compare(|| "u0·u0 = u0".into(), alg.multiply(&u0, &u0), u0.clone());
    report.compare(
        || "u1·u1 = −λu1".into(),
        alg.multiply(&u1, &u1),
        vec![z.clone(), -&lam],
    );
    report.compare(
        || "P(u0)P(u0) = −λu1".into(),
        alg.multiply(&alg.apply(&u0), &alg.apply(&u0)),
        vec![z.clone(), -&lam],
    );
    // 2P(P(r)s) + λP(rs) + λP(r)s at the three pairs with r ≤ s:
    // (u0,u0): 2P(u1) + λu1 + λu1 = −2λu1 + 2λu1
    // (u0,u1): 2P(u1²) + λP(u1) + λu1² = 2λ²u1 − λ²u1 − λ²u1
    // (u1,u1): 2P(−λu1·u1) + λP(u1²) + λ(−λu1)u1 = −2λ³u1 + λ³u1 + λ³u1
    for (r, s) in [(&u0, &u0), (&u0, &u1), (&u1, &u1)] {
        let pr = alg.apply(r);
        let two = f.from_i64(2);
        let mut lhs = vector::scale(&two, &alg.apply(&alg.multiply(&pr, s)));
        lhs = vector::add(&lhs, &vector::scale(&lam, &alg.apply(&alg.multiply(r, s))));
        lhs = vector::add(&lhs, &vector::scale(&lam, &alg.multiply(&pr, s)));
        report.compare(
            || format!("right criterion at ({}, {})", alg.render(r), alg.render(s)),
            lhs,
            vector::zeros(f, 2),
        );
    }
    report
}

/// Random integer perturbations `T = P + E` with `E ≠ 0`: each verdict of the
/// checker is confirmed by re-evaluating the identity at random vectors.
fn falsifiability(alg: &AlgebraPresentation, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let f = alg.field();
    let d = alg.dim();
    let mut rejected = 0;
    let mut disagreements = Vec::new();
    for trial in 0..FALSIFIABILITY_TRIALS {
        let mut delta = Matrix::zeros(f, d, d);
        while delta.is_zero() {
            delta = Matrix::from_fn(f, d, d, |_, _| f.from_i64(rng.gen_range(-2..=2)));
        }
        let t = AlgebraPresentation::new(
            alg.algebra().clone(),
            alg.weight().clone(),
            alg.operator().add(&delta),
        )?;
        let report = t.check_rota_baxter();
        let mut holds_at_random = true;
        for _ in 0..8 {
            let (r, s) = (random_vector(f, rng, d, 5), random_vector(f, rng, d, 5));
            let (tr, ts) = (t.apply(&r), t.apply(&s));
            let lhs = t.multiply(&tr, &ts);
            let mut rhs = t.apply(&t.multiply(&r, &ts));
            rhs = vector::add(&rhs, &t.apply(&t.multiply(&tr, &s)));
            rhs = vector::add(
                &rhs,
                &vector::scale(t.weight(), &t.apply(&t.multiply(&r, &s))),
            );
            holds_at_random &= lhs == rhs;
        }
        if !report.passed() {
            rejected += 1;
            if holds_at_random {
                disagreements.push(json!({ "trial": trial, "detail": "checker rejects, random vectors found no failure" }));
            }
        } else if !holds_at_random {
            disagreements.push(json!({ "trial": trial, "detail": "checker accepts, random vectors found a failure" }));
        }
    }
    let verdict = rejected > 0 && disagreements.is_empty();
    Ok(Outcome::new(
        verdict,
        json!({ "trials": FALSIFIABILITY_TRIALS, "rejected": rejected, "disagreements": disagreements }),
    ))
}

fn module_checks(corpus: &Corpus, out: &mut Vec<Check>) {
    for m in corpus.modules() {
        let module = m.module.clone();
        out.push(Check::new(
            format!("rbmod.module_identity/{}", m.name),
            "left or right Rota-Baxter module identity",
            &m.name,
            move |_| Ok(Outcome::from_report(&module.check())),
        ));
    }
    if let Ok(alg) = corpus.algebra("E(1)").cloned() {
        out.push(Check::new(
            "rbmod.module_identity.refuted/E(1)/left-p=id",
            "the module checker rejects p = id on the regular module",
            "E(1)",
            move |_| {
                let f = alg.field();
                let m = RbModule::regular(alg.clone(), Side::Left)
                    .with_operator(Matrix::identity(f, 2))?;
                let report = m.check();
                Ok(Outcome::new(!report.passed(), report_witness(&report)))
            },
        ));
    }
    for a in corpus.algebras() {
        let alg = a.algebra.clone();
        if Bimodule::regular(alg.clone()).verify().is_err() {
            continue;
        }
        out.push(Check::new(
            format!("rbmod.hom_structures/{}", a.name),
            "the four Hom-module structures satisfy their side's identity",
            &a.name,
            move |_| hom_structures(&alg),
        ));
    }
    for a in corpus.algebras() {
        let alg = a.algebra.clone();
        let Ok(left) = regular(&alg, Side::Left) else {
            continue;
        };
        let Ok(mc) = module_constants(&left) else {
            continue;
        };
        if mc.dim() != left.dim() {
            continue;
        }
        out.push(Check::new(
            format!("rbmod.module_constants_full/{}", a.name),
            "MC(R) = R forces P(r) = P(1)r and P(1)(P(1) + λ) = 0",
            &a.name,
            move |_| {
                let c = check_mc_full_consequence(&alg)?;
                Ok(Outcome::new(
                    c.report.passed(),
                    json!({ "p_one": c.p_one, "branch": c.branch }),
                ))
            },
        ));
    }
}

fn hom_structures(alg: &Arc<AlgebraPresentation>) -> Result<Outcome> {
    let bi = Bimodule::regular(alg.clone()).verify()?;
    let mut lefts = vec![regular(alg, Side::Left)?];
    let mut rights = vec![regular(alg, Side::Right)?];
    if alg.dim() <= TENSOR_DIM {
        let ring = OpRing::new(alg.clone());
        lefts.push(ring.left_module()?);
        rights.push(ring.right_module()?);
    }
    let mut report = AxiomReport::new("Hom-module structures");
    let mut cases = Vec::new();
    for (l, r) in lefts.iter().zip(&rights) {
        for s in [
            HomStructure::TargetLeft {
                source: r,
                target: &bi,
            },
            HomStructure::TargetRight {
                source: l,
                target: &bi,
            },
            HomStructure::SourceLeft {
                source: &bi,
                target: l,
            },
            HomStructure::SourceRight {
                source: &bi,
                target: r,
            },
        ] {
            let hm = hom_module(s)?;
            let expected = if s.case() % 2 == 1 {
                Side::Left
            } else {
                Side::Right
            };
            if hm.module.side() != expected {
                report.fail(
                    format!("case {} has the wrong side", s.case()),
                    vec![],
                    vec![],
                );
            }
            let check = hm.module.check();
            cases.push(
                json!({ "case": s.case(), "dim": hm.module.dim(), "verdict": check.passed() }),
            );
            report.merge(check);
        }
    }
    Ok(Outcome::new(
        report.passed(),
        json!({ "cases": cases, "report": report_witness(&report) }),
    ))
}

fn opring_checks(corpus: &Corpus, out: &mut Vec<Check>) {
    for a in corpus
        .algebras()
        .iter()
        .filter(|a| a.algebra.dim() <= OPRING_DIM)
    {
        let alg = a.algebra.clone();
        out.push(Check::new(
            format!("opring.action_consistency/{}", a.name),
            "normal-form action equals the direct action of the word",
            &a.name,
            move |rng| {
                let ring = OpRing::new(alg.clone());
                let m = regular(&alg, Side::Left)?;
                Ok(Outcome::from_report(&check_action_consistency(
                    &ring,
                    &m,
                    WORD_TRIALS,
                    MAX_SEGMENTS,
                    rng,
                )?))
            },
        ));
        let alg = a.algebra.clone();
        out.push(Check::new(
            format!("opring.multiply_consistency/{}", a.name),
            "closed-form product equals the reduced concatenation",
            &a.name,
            move |rng| {
                Ok(Outcome::from_report(&check_multiply_consistency(
                    &OpRing::new(alg.clone()),
                    MULTIPLY_PAIRS,
                    rng,
                )?))
            },
        ));
        let alg = a.algebra.clone();
        out.push(Check::new(
            format!("opring.associativity/{}", a.name),
            "associativity of the operator ring on normal forms",
            &a.name,
            move |rng| {
                Ok(Outcome::from_report(&check_associativity(
                    &OpRing::new(alg.clone()),
                    WORD_TRIALS,
                    rng,
                )))
            },
        ));
        let alg = a.algebra.clone();
        out.push(Check::new(
            format!("opring.ring_action/{}", a.name),
            "a module over (R,P) is a module over the operator ring",
            &a.name,
            move |rng| {
                let ring = OpRing::new(alg.clone());
                let m = regular(&alg, Side::Left)?;
                Ok(Outcome::from_report(&check_ring_action(
                    &ring,
                    &m,
                    WORD_TRIALS,
                    rng,
                )?))
            },
        ));
        let alg = a.algebra.clone();
        out.push(Check::new(
            format!("opring.confluence/{}", a.name),
            "leftmost and rightmost rewriting agree on overlap words",
            &a.name,
            move |_| {
                let max_q = if alg.dim() <= 2 { 4 } else { 3 };
                let r = check_local_confluence(&OpRing::new(alg.clone()), max_q)?;
                Ok(Outcome::new(
                    r.verdict,
                    json!({ "max_q": max_q, "words_checked": r.words_checked, "discrepancies": r.discrepancies.len() }),
                ))
            },
        ));
    }
    for a in corpus.algebras_of(AlgebraKind::ExampleE) {
        let alg = a.algebra.clone();
        out.push(Check::new(
            format!("opring.example_e_reductions/{}", a.name),
            "QQ, Qu1Q and their products in E(λ) expanded by hand",
            &a.name,
            move |_| Ok(Outcome::from_report(&example_e_reductions(&alg)?)),
        ));
    }
}

fn example_e_reductions(alg: &Arc<AlgebraPresentation>) -> Result<AxiomReport> {
    let ring = OpRing::new(alg.clone());
    let f = alg.field();
    let lam = alg.weight().clone();
    let (z, o) = (f.zero(), f.one());
    let u0 = vec![o.clone(), z.clone()];
    let u1 = vec![z.clone(), o.clone()];
    let raw = |v: &Vector| Token::Element(v.iter().map(Into::into).collect());
    let q = || Token::Marker("Q".into());
    let mut report = AxiomReport::new("E(λ) reductions expanded by hand");
    // Qu1Q → P(u1)Q − QP(u1) − λQu1 = −λu1Q + λQu1 − λQu1 = −λ·u1Qu0
    let qu1q = ring.reduce(&ring.parse_word(&[q(), raw(&u1), q()])?)?;
    let expected = ring.rqs(&u1, &u0).scale(&-&lam);
    report.compare(|| "Qu1Q".into(), qu1q.to_vector(), expected.to_vector());
    // QQ = Q·1·Q → P(1)Q − QP(1) − λQ = u1Q − Qu1 − λQ
    let qq = ring.reduce(&ring.parse_word(&[q(), q()])?)?;
    let expected = ring
        .rqs(&u1, &u0)
        .sub(&ring.rqs(&u0, &u1))
        .sub(&ring.rqs(&u0, &u0).scale(&lam));
    report.compare(|| "QQ".into(), qq.to_vector(), expected.to_vector());
    let product = ring.multiply(&ring.rqs(&u0, &u1), &ring.rqs(&u0, &u0));
    report.compare(
        || "(u0Qu1)(u0Qu0) = reduce(Qu1Q)".into(),
        product.to_vector(),
        qu1q.to_vector(),
    );
    let product = ring.multiply(&ring.q(), &ring.q());
    report.compare(
        || "(u0Qu0)(u0Qu0) = reduce(QQ)".into(),
        product.to_vector(),
        qq.to_vector(),
    );
    // Qu1Q·u0 on E(λ) = −λu1·P(u0) = −λu1² = λ²u1
    let m = regular(alg, Side::Left)?;
    let word = Word::new(
        o.clone(),
        vec![alg.unit().clone(), u1.clone(), alg.unit().clone()],
    )?;
    let expected = vec![z.clone(), &lam * &lam];
    report.compare(
        || "Qu1Q·u0 through the normal form".into(),
        ring.act(&qu1q, &m, &u0)?,
        expected.clone(),
    );
    report.compare(
        || "Qu1Q·u0 through the word".into(),
        ring.act_word(&word, &m, &u0)?,
        expected,
    );
    report.compare(
        || "Q·m = P(m)".into(),
        ring.act(&ring.q(), &m, &u1)?,
        alg.apply(&u1),
    );
    Ok(report)
}

fn freemod_checks(corpus: &Corpus, out: &mut Vec<Check>) {
    for a in corpus
        .algebras()
        .iter()
        .filter(|a| a.algebra.dim() <= OPRING_DIM && a.kind != AlgebraKind::Integration)
    {
        let targets: Vec<RbModule> = corpus
            .modules_over(&a.name)
            .filter(|m| m.module.side() == Side::Left && m.module.dim() <= 12)
            .map(|m| m.module.clone())
            .collect();
        let alg = a.algebra.clone();
        let t = targets.clone();
        out.push(Check::new(
            format!("freemod.universal/{}", a.name),
            "f̄∘j = f, f̄ intertwines the operators and is the only such map",
            &a.name,
            move |rng| free_universal(&alg, &t, rng),
        ));
        let alg = a.algebra.clone();
        out.push(Check::new(
            format!("freemod.relations/{}", a.name),
            "relation generators of the free operated module vanish in the free module",
            &a.name,
            move |_| free_relations(&alg),
        ));
        let alg = a.algebra.clone();
        out.push(Check::new(
            format!("freemod.restricted/{}", a.name),
            "restricted free module: identity holds; maps exist exactly for module-constant images",
            &a.name,
            move |rng| restricted(&alg, &targets, rng),
        ));
    }
}

fn free_universal(
    alg: &Arc<AlgebraPresentation>,
    targets: &[RbModule],
    rng: &mut ChaCha8Rng,
) -> Result<Outcome> {
    let f = alg.field();
    let free = free_rb_module(alg, vec!["x".into()])?;
    let operated = FreeOperated::new(alg.clone(), vec!["x".into()], DEFAULT_N_MAX);
    let terms = operated.basis_terms(3);
    let mut report = AxiomReport::new("universal property of the free module");
    for k in 0..FREE_MAPS {
        let target = &targets[k % targets.len()];
        let image = random_vector(f, rng, target.dim(), 3);
        let fbar = free.universal_map(std::slice::from_ref(&image), target)?;
        report.compare(
            || format!("map {k}: f̄(j(x)) = f(x)"),
            fbar.matrix().mul_vec(&free.j(0)),
            image.clone(),
        );
        let lhs = fbar.matrix().mul(free.module().operator());
        let rhs = target.operator().mul(fbar.matrix());
        report.compare(
            || format!("map {k}: f̄∘p = p∘f̄"),
            lhs.entries().to_vec(),
            rhs.entries().to_vec(),
        );
        let ftilde = operated.universal_map(std::slice::from_ref(&image), target)?;
        for t in terms.iter().filter(|_| k < 3) {
            report.compare(
                || format!("map {k}: f̃ agrees with f̄∘π on {}", operated.render(t)),
                ftilde.apply(t),
                fbar.matrix().mul_vec(&free.pi(t)?),
            );
        }
    }
    for target in targets {
        report.compare(
            || "homomorphisms vanishing on j(x)".into(),
            num(f, free.homs_vanishing_on_generators(target)?),
            num(f, 0),
        );
    }
    Ok(Outcome::from_report(&report))
}

fn free_relations(alg: &Arc<AlgebraPresentation>) -> Result<Outcome> {
    let free = free_rb_module(alg, vec!["x".into()])?;
    let operated = FreeOperated::new(alg.clone(), vec!["x".into()], DEFAULT_N_MAX);
    let mut report = AxiomReport::new("π kills the relation generators");
    let mut count = 0;
    for y in operated.basis_terms(RELATION_LENGTH) {
        for i in 0..alg.dim() {
            let rel = operated.relation(&alg.basis(i), &y)?;
            count += 1;
            report.compare(
                || format!("r = {}, y = {}", alg.label(i), operated.render(&y)),
                free.pi(&rel)?,
                free.module().zero_vector(),
            );
        }
    }
    let mut out = Outcome::from_report(&report);
    out.witness["relations"] = json!(count);
    Ok(out)
}

fn restricted(
    alg: &Arc<AlgebraPresentation>,
    targets: &[RbModule],
    rng: &mut ChaCha8Rng,
) -> Result<Outcome> {
    let f = alg.field();
    let rf = restricted_free(alg, vec!["x".into(), "y".into()])?;
    let mut report = rf.module().check_left_rb()?;
    let (mut accepted, mut refused) = (0, 0);
    for target in targets {
        let mc = module_constants(target)?;
        for k in 0..6 {
            let images: Vec<Vector> = (0..2)
                .map(|x| {
                    if (k + x) % 2 == 0 && mc.dim() > 0 {
                        mc.combine(&random_vector(f, rng, mc.dim(), 3))
                    } else {
                        random_vector(f, rng, target.dim(), 3)
                    }
                })
                .collect();
            let inside = images.iter().all(|v| mc.contains(v));
            match rf.universal_map(&images, target) {
                Ok(map) => {
                    accepted += 1;
                    if !inside {
                        report.fail(format!("accepted images outside MC in {k}"), vec![], vec![]);
                    }
                    report.compare(
                        || format!("f̄(ι(x)) = f(x) in {k}"),
                        map.matrix().mul_vec(&rf.iota(0)),
                        images[0].clone(),
                    );
                    let lhs = map.matrix().mul(rf.module().operator());
                    let rhs = target.operator().mul(map.matrix());
                    report.compare(
                        || format!("f̄∘p̃ = p∘f̄ in {k}"),
                        lhs.entries().to_vec(),
                        rhs.entries().to_vec(),
                    );
                }
                Err(Error::NotModuleConstant { .. }) => {
                    refused += 1;
                    if inside {
                        report.fail(format!("refused images inside MC in {k}"), vec![], vec![]);
                    }
                }
                Err(e) => return Err(e),
            }
        }
    }
    let mut out = Outcome::from_report(&report);
    out.witness["accepted"] = json!(accepted);
    out.witness["refused"] = json!(refused);
    Ok(out)
}

fn tensor_checks(corpus: &Corpus, out: &mut Vec<Check>) {
    for a in corpus.algebras_of(AlgebraKind::ExampleE) {
        if !["E(0)", "E(1)", "E(2)"].contains(&a.name.as_str()) {
            continue;
        }
        let alg = a.algebra.clone();
        out.push(Check::new(
            format!("tensor.example_e_dimension/{}", a.name),
            "E(λ)⊗E(λ) over (E, P) has dimension 2",
            &a.name,
            move |_| {
                let t = tensor_product(&regular(&alg, Side::Right)?, &regular(&alg, Side::Left)?)?;
                Ok(Outcome::new(
                    t.dim() == 2,
                    json!({ "dim": t.dim(), "basis": t.basis_labels() }),
                ))
            },
        ));
        let alg = a.algebra.clone();
        out.push(Check::new(
            format!("tensor.right_exact/{}", a.name),
            "tensoring the ideal sequence of u1 stays exact at the middle and right",
            &a.name,
            move |_| {
                let f = alg.field();
                let n = regular(&alg, Side::Left)?;
                let sub = crate::linalg::Subspace::span(f, 2, [vector::unit(f, 2, 1)]);
                let (_, inclusion) = n.submodule(&sub)?;
                let (_, projection) = n.quotient(&sub)?;
                Ok(Outcome::from_report(&right_exactness_check(
                    &regular(&alg, Side::Right)?,
                    &inclusion,
                    &projection,
                )?))
            },
        ));
    }
    for a in corpus
        .algebras()
        .iter()
        .filter(|a| a.algebra.dim() <= TENSOR_DIM)
    {
        let alg = a.algebra.clone();
        let lefts: Vec<(String, RbModule)> = corpus
            .modules_over(&a.name)
            .filter(|m| m.module.side() == Side::Left && m.module.dim() <= 12)
            .map(|m| (m.name.clone(), m.module.clone()))
            .collect();
        let rights: Vec<(String, RbModule)> = corpus
            .modules_over(&a.name)
            .filter(|m| m.module.side() == Side::Right)
            .map(|m| (m.name.clone(), m.module.clone()))
            .collect();
        let (l, r) = (lefts.clone(), rights.clone());
        out.push(Check::new(
            format!("tensor.universal/{}", a.name),
            "ι is balanced and bilinear maps factor uniquely through it",
            &a.name,
            move |rng| tensor_universal(&r, &l, rng),
        ));
        let l = lefts.clone();
        out.push(Check::new(
            format!("tensor.direct_sum/{}", a.name),
            "M⊗(N1⊕N2) and (M1⊕M2)⊗N have the summed dimension",
            &a.name,
            move |_| tensor_direct_sums(&alg, &rights, &l),
        ));
        let alg = a.algebra.clone();
        out.push(Check::new(
            format!("tensor.functor/{}", a.name),
            "M⊗− preserves identities and composition",
            &a.name,
            move |rng| tensor_functor(&alg, rng),
        ));
        let alg = a.algebra.clone();
        if Bimodule::regular(alg.clone()).verify().is_ok() {
            out.push(Check::new(
                format!("tensor.adjunction/{}", a.name),
                "Hom(M⊗N, L) ≅ Hom(M, Hom(N, L))",
                &a.name,
                move |_| {
                    let b = Bimodule::regular(alg.clone()).verify()?;
                    let m = regular(&alg, Side::Right)?;
                    let mut report = AxiomReport::new("adjunction");
                    let mut dims = Vec::new();
                    for l in [
                        regular(&alg, Side::Right)?,
                        OpRing::new(alg.clone()).right_module()?,
                    ] {
                        let r = adjunction_check(&m, &b, &l)?;
                        dims.push((r.lhs_dim, r.rhs_dim));
                        report.merge(r.report);
                    }
                    let mut out = Outcome::from_report(&report);
                    out.witness["hom_dims"] = json!(dims);
                    Ok(out)
                },
            ));
        }
    }
}

fn tensor_universal(
    rights: &[(String, RbModule)],
    lefts: &[(String, RbModule)],
    rng: &mut ChaCha8Rng,
) -> Result<Outcome> {
    let mut report = AxiomReport::new("universal property of the tensor product");
    for (_, m) in rights.iter().take(2) {
        for (nname, n) in lefts.iter().take(3) {
            let f = m.field();
            let t = tensor_product(m, n)?;
            report.merge(t.bilinearity_report());
            let functionals = t.bilinear_functionals();
            for k in 0..BILINEAR_MAPS {
                let rows: Vec<Vector> = (0..2)
                    .map(|_| functionals.combine(&random_vector(f, rng, functionals.dim(), 3)))
                    .collect();
                let b = Matrix::from_rows(f, rows)?;
                let (factor, freedom) = t.factor(&b)?;
                report.compare(
                    || format!("{nname}, map {k}: factorization unique"),
                    num(f, freedom),
                    num(f, 0),
                );
                let Some(factor) = factor else {
                    report.fail(
                        format!("{nname}, map {k}: no factorization"),
                        vec![],
                        vec![],
                    );
                    continue;
                };
                for a in 0..m.dim() {
                    for c in 0..n.dim() {
                        let (x, y) = (m.basis(a), n.basis(c));
                        report.compare(
                            || format!("{nname}, map {k}: f̃(ι(v{a}, w{c})) = f(v{a}, w{c})"),
                            factor.mul_vec(&t.iota(&x, &y)),
                            b.mul_vec(&vector::kron(&x, &y)),
                        );
                    }
                }
            }
        }
    }
    Ok(Outcome::from_report(&report))
}

fn tensor_direct_sums(
    alg: &Arc<AlgebraPresentation>,
    rights: &[(String, RbModule)],
    lefts: &[(String, RbModule)],
) -> Result<Outcome> {
    let f = alg.field();
    let mut report = AxiomReport::new("tensor products distribute over direct sums");
    let mut rows = Vec::new();
    for (mname, m) in rights {
        for (i, (n1name, n1)) in lefts.iter().enumerate() {
            for (n2name, n2) in lefts.iter().skip(i).take(2) {
                let sum = direct_sum(alg, Side::Left, &[n1.clone(), n2.clone()])?.module;
                let whole = tensor_product(m, &sum)?.dim();
                let parts = tensor_product(m, n1)?.dim() + tensor_product(m, n2)?.dim();
                rows.push(json!([mname, n1name, n2name, whole]));
                report.compare(
                    || format!("{mname} ⊗ ({n1name} ⊕ {n2name})"),
                    num(f, whole),
                    num(f, parts),
                );
            }
        }
    }
    if let (Some((_, n)), true) = (lefts.first(), rights.len() >= 2) {
        let (m1, m2) = (&rights[0].1, &rights[1].1);
        let sum = direct_sum(alg, Side::Right, &[m1.clone(), m2.clone()])?.module;
        let whole = tensor_product(&sum, n)?.dim();
        let parts = tensor_product(m1, n)?.dim() + tensor_product(m2, n)?.dim();
        report.compare(|| "(M1 ⊕ M2) ⊗ N".into(), num(f, whole), num(f, parts));
    }
    let mut out = Outcome::from_report(&report);
    out.witness["instances"] = json!(rows.len());
    Ok(out)
}

fn tensor_functor(alg: &Arc<AlgebraPresentation>, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let f = alg.field();
    let m = regular(alg, Side::Right)?;
    let n = regular(alg, Side::Left)?;
    let d = OpRing::new(alg.clone()).left_module()?;
    let free = free_rb_module(alg, vec!["x".into()])?;
    let (tn, td) = (tensor_product(&m, &n)?, tensor_product(&m, &d)?);
    let mut report = AxiomReport::new("functoriality of M⊗−");
    for (name, t, module) in [("N", &tn, &n), ("D", &td, &d)] {
        let id = induced_map(t, t, &ModuleMap::identity(module))?;
        report.compare(
            || format!("id on M⊗{name}"),
            num(f, usize::from(id.is_identity())),
            num(f, 1),
        );
    }
    let homs = hom_space(&n, &d)?;
    for k in 0..5 {
        let g = free.universal_map(&[random_vector(f, rng, n.dim(), 3)], &n)?;
        let h = homs.combine(&random_vector(f, rng, homs.dim(), 2));
        let h = ModuleMap::new(n.clone(), d.clone(), h)?;
        let composed = induced_map(&td, &td, &h.compose(&g)?)?;
        let stepwise = induced_map(&tn, &td, &h)?.mul(&induced_map(&td, &tn, &g)?);
        report.compare(
            || format!("pair {k}: (h∘g)* = h*∘g*"),
            composed.entries().to_vec(),
            stepwise.entries().to_vec(),
        );
    }
    Ok(Outcome::from_report(&report))
}

fn flat_checks(corpus: &Corpus, out: &mut Vec<Check>) {
    for a in corpus
        .algebras()
        .iter()
        .filter(|a| a.algebra.dim() <= TENSOR_DIM)
    {
        let frees: Vec<(String, RbModule)> = corpus
            .modules_over(&a.name)
            .filter(|m| m.name.ends_with("/free(x)") || m.name.ends_with("/free(x,y)"))
            .map(|m| (m.name.clone(), m.module.clone()))
            .collect();
        let lefts: Vec<RbModule> = corpus
            .modules_over(&a.name)
            .filter(|m| m.module.side() == Side::Left && m.module.dim() <= 8)
            .map(|m| m.module.clone())
            .collect();
        let alg = a.algebra.clone();
        let fr = frees.clone();
        out.push(Check::new(
            format!("flat.free_projective/{}", a.name),
            "free modules lift against epimorphisms",
            &a.name,
            move |rng| free_lifts(&alg, &fr, &lefts, rng),
        ));
        let alg = a.algebra.clone();
        let fr = frees.clone();
        out.push(Check::new(
            format!("flat.free_flat/{}", a.name),
            "free modules keep every catalog monomorphism injective",
            &a.name,
            move |_| {
                let monos = standard_catalog(&alg, Side::Right)?;
                let mut all = true;
                let mut rows = Vec::new();
                for (name, m) in &fr {
                    let r = flatness_evidence(m, &monos)?;
                    all &= r.verdict;
                    rows.push(
                        json!({ "module": name, "verdict": r.verdict, "summary": r.summary() }),
                    );
                }
                Ok(Outcome::new(
                    all,
                    json!({ "catalog_size": monos.len(), "modules": rows }),
                ))
            },
        ));
        let alg = a.algebra.clone();
        out.push(Check::new(
            format!("flat.summand_split/{}", a.name),
            "a projective module splits off a free module: F = im β ⊕ ker f",
            &a.name,
            move |_| {
                let mut report = AxiomReport::new("summand splittings");
                let mut rows = Vec::new();
                let mut modules: Vec<(String, RbModule)> = frees.clone();
                modules.push(("zero".into(), RbModule::zero(alg.clone(), Side::Left)));
                if let Some((name, m)) = frees.first() {
                    let sum = direct_sum(&alg, Side::Left, &[m.clone(), m.clone()])?.module;
                    modules.push((format!("{name} ⊕ {name}"), sum));
                }
                for (name, m) in &modules {
                    match projective_summand_split(m)? {
                        Some(split) => {
                            rows.push(json!({ "module": name, "split": split.summary() }));
                            report.merge(split.report);
                        }
                        None => report.fail(format!("{name} has no splitting"), vec![], vec![]),
                    }
                }
                let mut out = Outcome::from_report(&report);
                out.witness["splits"] = json!(rows);
                Ok(out)
            },
        ));
        let alg = a.algebra.clone();
        out.push(Check::new(
            format!("flat.direct_sum/{}", a.name),
            "a direct sum passes the catalog iff every summand does",
            &a.name,
            move |_| {
                let monos = standard_catalog(&alg, Side::Left)?;
                let d = OpRing::new(alg.clone()).right_module()?;
                let r = regular(&alg, Side::Right)?;
                let mut report =
                    direct_sum_flatness_check(&alg, Side::Right, &[d.clone(), d.clone()], &monos)?;
                report.merge(direct_sum_flatness_check(
                    &alg,
                    Side::Right,
                    &[d, r],
                    &monos,
                )?);
                report.merge(direct_sum_flatness_check(&alg, Side::Right, &[], &monos)?);
                Ok(Outcome::from_report(&report))
            },
        ));
        let alg = a.algebra.clone();
        out.push(Check::new(
            format!("baer/{}", a.name),
            "extension of maps from left ideals of the operator ring",
            &a.name,
            move |_| {
                let ring = OpRing::new(alg.clone());
                let ideals = op_ring_ideals(&ring)?;
                let zero = RbModule::zero(alg.clone(), Side::Left);
                let trivial = baer_extension_test(&zero, &ring, &ideals)?;
                let own = baer_extension_test(&ring.left_module()?, &ring, &ideals[..1])?;
                let regular = baer_extension_test(&regular(&alg, Side::Left)?, &ring, &ideals)?;
                let consistent = regular.entries.iter().all(|e| e.extended <= e.hom_dim);
                Ok(Outcome::new(
                    trivial.verdict && own.verdict && consistent,
                    json!({ "scope": regular.scope, "regular_module": regular.entries, "regular_verdict": regular.verdict }),
                ))
            },
        ));
    }
    if let Ok(alg) = corpus.algebra("zero(k, 0)").cloned() {
        out.push(Check::new(
            "flat.witness/zero(k, 0)",
            "k with p = 0 over the zero operator is neither flat nor projective",
            "zero(k, 0)",
            move |_| {
                let free = free_rb_module(&alg, vec!["x".into()])?;
                let f = alg.field();
                let v = regular(&alg, Side::Left)?;
                let to_q = ModuleMap::new(
                    v.clone(),
                    free.module().clone(),
                    Matrix::from_i64(f, &[&[0], &[1]]),
                )?;
                let report = flatness_evidence(
                    &regular(&alg, Side::Right)?,
                    &[Mono::new("k → F(x), 1 ↦ Q", to_q)?],
                )?;
                let split = projective_summand_split(&v)?;
                Ok(Outcome::new(
                    !report.verdict && split.is_none(),
                    json!({ "flatness": report.summary(), "projective": split.is_some() }),
                ))
            },
        ));
    }
    for a in corpus.algebras_of(AlgebraKind::ScalarOperator) {
        let alg = a.algebra.clone();
        out.push(Check::new(
            format!("flat.iso/{}", a.name),
            "M⊗R ≅ M for the self-module of a scalar operator",
            &a.name,
            move |_| {
                let m = regular(&alg, Side::Right)?;
                let evidence = flatness_evidence(&m, &standard_catalog(&alg, Side::Left)?)?;
                let report = flat_iso_check(&m, &scalar_eta(), &evidence)?;
                Ok(Outcome::from_report(&report))
            },
        ));
    }
    if let Ok(alg) = corpus.algebra("scalar(E, 2)").cloned() {
        out.push(Check::new(
            "flat.iso.free_fails/scalar(E, 2)",
            "M⊗R and M differ for the free right module on one generator",
            "scalar(E, 2)",
            move |_| {
                let d = OpRing::new(alg.clone()).right_module()?;
                let evidence = flatness_evidence(&d, &standard_catalog(&alg, Side::Left)?)?;
                let report = flat_iso_check(&d, &scalar_eta(), &evidence)?;
                let r = Bimodule::regular(alg.clone()).verify()?;
                let t = tensor_product(&d, r.as_left())?;
                Ok(Outcome::new(
                    !report.passed() && t.dim() < d.dim(),
                    json!({ "dim_m": d.dim(), "dim_m_tensor_r": t.dim(), "report": report_witness(&report) }),
                ))
            },
        ));
    }
}

fn scalar_eta() -> EtaHypothesis {
    EtaHypothesis::Asserted(
        "for P = −λ·id the inclusion R → R_RB⟨Q⟩ is an injective operated module map".into(),
    )
}

fn free_lifts(
    alg: &Arc<AlgebraPresentation>,
    frees: &[(String, RbModule)],
    lefts: &[RbModule],
    rng: &mut ChaCha8Rng,
) -> Result<Outcome> {
    let f = alg.field();
    let mut report = AxiomReport::new("lifting against epimorphisms");
    let gen = free_rb_module(alg, vec!["x".into(), "y".into()])?;
    for (name, p) in frees {
        let gens = p.dim() / OpRing::new(alg.clone()).dim();
        for k in 0..EPIS {
            let m = &lefts[rng.gen_range(0..lefts.len())];
            let epi = if k % 2 == 0 {
                let k2 = &lefts[rng.gen_range(0..lefts.len())];
                direct_sum(alg, Side::Left, &[m.clone(), k2.clone()])?.projections[0].clone()
            } else {
                let cover = free_rb_module(alg, (0..m.dim()).map(|i| format!("b{i}")).collect())?;
                let images: Vec<Vector> = (0..m.dim()).map(|i| m.basis(i)).collect();
                cover.universal_map(&images, m)?
            };
            let images: Vec<Vector> = (0..gens)
                .map(|_| random_vector(f, rng, m.dim(), 3))
                .collect();
            let g = if gens == 1 {
                free_rb_module(alg, vec!["x".into()])?.universal_map(&images, m)?
            } else {
                gen.universal_map(&images, m)?
            };
            let g = ModuleMap::new(p.clone(), m.clone(), g.matrix().clone())?;
            match projective_lift(p, &epi, &g)? {
                Some(lift) => report.compare(
                    || format!("{name}, epi {k}: f∘ḡ = g"),
                    epi.matrix().mul(lift.matrix()).entries().to_vec(),
                    g.matrix().entries().to_vec(),
                ),
                None => {
                    report.fail(format!("{name}, epi {k}: no lift"), vec![], vec![]);
                    false
                }
            };
        }
    }
    Ok(Outcome::from_report(&report))
}

/// Every check over the corpus, in no particular order.
pub fn plan(corpus: &Corpus) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    algebra_checks(corpus, &mut out);
    module_checks(corpus, &mut out);
    opring_checks(corpus, &mut out);
    freemod_checks(corpus, &mut out);
    tensor_checks(corpus, &mut out);
    flat_checks(corpus, &mut out);
    Ok(out)
}
