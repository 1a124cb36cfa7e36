//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_rational::Rational64;
use rbmod::fixtures::Corpus;
use rbmod::tensorflat::{
    flat_iso_check, flatness_evidence, standard_catalog, tensor_product, EtaHypothesis,
};
use rbmod::verify::{run_with_corpus, verify_paper, VerifyOptions, DEFAULT_SEED};
use rbmod::{AlgebraPresentation, Field, RbModule, Scalar, Side};

type Check = std::result::Result<String, String>;
type Criterion<'a> = (&'static str, Duration, Box<dyn Fn() -> Check + 'a>);

/// E(λ) by hand: `(a, b) = a·u0 + b·u1`, `u1² = −λu1`, `P(a, b) = (0, a − λb)`.
#[derive(Clone, Copy, Debug, PartialEq)]
struct HandE {
    lambda: Rational64,
}

type Pair = (Rational64, Rational64);

impl HandE {
    fn mul(&self, x: Pair, y: Pair) -> Pair {
        (x.0 * y.0, x.0 * y.1 + x.1 * y.0 - self.lambda * x.1 * y.1)
    }

    fn p(&self, x: Pair) -> Pair {
        (Rational64::from(0), x.0 - self.lambda * x.1)
    }

    fn add(x: Pair, y: Pair) -> Pair {
        (x.0 + y.0, x.1 + y.1)
    }

    fn scale(c: Rational64, x: Pair) -> Pair {
        (c * x.0, c * x.1)
    }

    fn basis(i: usize) -> Pair {
        let (z, o) = (Rational64::from(0), Rational64::from(1));
        if i == 0 {
            (o, z)
        } else {
            (z, o)
        }
    }

    /// `2P(P(r)s) + λP(rs) + λP(r)s`.
    fn right_identity(&self, r: Pair, s: Pair) -> Pair {
        let two = Rational64::from(2);
        let a = HandE::scale(two, self.p(self.mul(self.p(r), s)));
        let b = HandE::scale(self.lambda, self.p(self.mul(r, s)));
        let c = HandE::scale(self.lambda, self.mul(self.p(r), s));
        HandE::add(HandE::add(a, b), c)
    }

    /// `P(r)P(s) − P(rP(s)) − P(P(r)s) − λP(rs)`.
    fn rota_baxter_defect(&self, r: Pair, s: Pair) -> Pair {
        let lhs = self.mul(self.p(r), self.p(s));
        let mut rhs = self.p(self.mul(r, self.p(s)));
        rhs = HandE::add(rhs, self.p(self.mul(self.p(r), s)));
        rhs = HandE::add(rhs, HandE::scale(self.lambda, self.p(self.mul(r, s))));
        (lhs.0 - rhs.0, lhs.1 - rhs.1)
    }
}

const WEIGHTS: [(i64, i64); 6] = [(0, 1), (1, 1), (-1, 1), (2, 1), (3, 1), (1, 2)];

fn q() -> Field {
    Field::Rational
}

fn to_scalars(x: Pair) -> Vec<Scalar> {
    vec![
        q().ratio(*x.0.numer(), *x.0.denom()),
        q().ratio(*x.1.numer(), *x.1.denom()),
    ]
}

fn e_name(num: i64, den: i64) -> String {
    if den == 1 {
        format!("E({num})")
    } else {
        format!("E({num}/{den})")
    }
}

/// Runs the checks whose ids start with one of `prefixes`; every family must
/// be nonempty and every entry must pass.
fn family(corpus: &Corpus, prefixes: &[&str]) -> Check {
    let mut total = 0;
    for prefix in prefixes {
        let options = VerifyOptions {
            filter: Some((*prefix).into()),
            ..VerifyOptions::default()
        };
        let report = run_with_corpus(corpus, &options).map_err(|e| e.to_string())?;
        let entries: Vec<_> = report
            .entries
            .iter()
            .filter(|e| e.id.starts_with(prefix))
            .collect();
        if entries.is_empty() {
            return Err(format!("no checks in family {prefix}"));
        }
        if let Some(bad) = entries.iter().find(|e| !e.verdict) {
            return Err(format!("{} failed: {}", bad.id, bad.witness));
        }
        total += entries.len();
    }
    Ok(format!("{total} checks"))
}

/// Runs the family `prefix` and requires each of `ids` to be present and passing.
fn require_entries(corpus: &Corpus, prefix: &str, ids: &[String]) -> Check {
    let options = VerifyOptions {
        filter: Some(prefix.into()),
        ..VerifyOptions::default()
    };
    let report = run_with_corpus(corpus, &options).map_err(|e| e.to_string())?;
    for id in ids {
        match report.entry(id) {
            None => return Err(format!("missing check {id}")),
            Some(e) if !e.verdict => return Err(format!("{id} failed: {}", e.witness)),
            Some(_) => {}
        }
    }
    Ok(format!("{} named checks", ids.len()))
}

fn criterion_1(corpus: &Corpus) -> Check {
    for (n, d) in WEIGHTS {
        let hand = HandE {
            lambda: Rational64::new(n, d),
        };
        let lib = AlgebraPresentation::example_e(&q().ratio(n, d));
        for i in 0..2 {
            for j in 0..2 {
                let (r, s) = (HandE::basis(i), HandE::basis(j));
                if hand.rota_baxter_defect(r, s) != (0.into(), 0.into()) {
                    return Err(format!("hand oracle: {} not Rota-Baxter", e_name(n, d)));
                }
                let (lr, ls) = (lib.basis(i), lib.basis(j));
                if lib.multiply(&lr, &ls) != to_scalars(hand.mul(r, s)) {
                    return Err(format!("{} product differs from hand model", e_name(n, d)));
                }
                if lib.apply(&lr) != to_scalars(hand.p(r)) {
                    return Err(format!("{} operator differs from hand model", e_name(n, d)));
                }
            }
        }
        if !lib.check_rota_baxter().passed() {
            return Err(format!("{} rejected", e_name(n, d)));
        }
    }
    let mut ids: Vec<String> = WEIGHTS
        .iter()
        .map(|&(n, d)| format!("algebra.rota_baxter/{}", e_name(n, d)))
        .collect();
    ids.extend(
        [
            "scalar(k, 1)",
            "scalar(E, 2)",
            "scalar(k[x]/x^3, 1)",
            "zero(k, 0)",
            "zero(k[x]/x^2, 3)",
            "E(1)[x]/x^2",
            "scalar(k, 1)[x]/x^3",
        ]
        .iter()
        .map(|f| format!("algebra.rota_baxter/{f}")),
    );
    require_entries(corpus, "algebra.rota_baxter/", &ids)?;
    family(corpus, &["algebra.rota_baxter/"])
}

fn criterion_2(corpus: &Corpus) -> Check {
    for (n, d) in WEIGHTS {
        let hand = HandE {
            lambda: Rational64::new(n, d),
        };
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let v = hand.right_identity(HandE::basis(i), HandE::basis(j));
            if v != (0.into(), 0.into()) {
                return Err(format!(
                    "hand oracle nonzero at (u{i}, u{j}) for {}",
                    e_name(n, d)
                ));
            }
        }
        let lib = AlgebraPresentation::example_e(&q().ratio(n, d));
        if !lib.check_right_self_module().passed() {
            return Err(format!("{} fails the right self identity", e_name(n, d)));
        }
    }
    for prefix in ["algebra.right_self_identity/", "algebra.example_e_values/"] {
        let ids: Vec<String> = WEIGHTS
            .iter()
            .map(|&(n, d)| format!("{prefix}{}", e_name(n, d)))
            .collect();
        require_entries(corpus, prefix, &ids)?;
    }
    Ok(format!(
        "{} weights, hand oracle and library agree",
        WEIGHTS.len()
    ))
}

fn criterion_7(corpus: &Corpus) -> Check {
    const PINNED: usize = 2;
    for n in [0, 1, 2] {
        let alg = Arc::new(AlgebraPresentation::example_e(&q().from_i64(n)));
        let right = RbModule::regular(alg.clone(), Side::Right)
            .verify()
            .map_err(|e| e.to_string())?;
        let left = RbModule::regular(alg, Side::Left)
            .verify()
            .map_err(|e| e.to_string())?;
        let t = tensor_product(&right, &left).map_err(|e| e.to_string())?;
        if t.dim() != PINNED {
            return Err(format!("E({n})⊗E({n}) has dimension {}", t.dim()));
        }
    }
    family(
        corpus,
        &[
            "tensor.example_e_dimension/",
            "tensor.universal/",
            "tensor.direct_sum/",
        ],
    )
}

fn criterion_9(corpus: &Corpus) -> Check {
    let alg = corpus
        .algebra("scalar(E, 2)")
        .map_err(|e| e.to_string())?
        .clone();
    let m = RbModule::regular(alg.clone(), Side::Right)
        .verify()
        .map_err(|e| e.to_string())?;
    let catalog = standard_catalog(&alg, Side::Left).map_err(|e| e.to_string())?;
    let evidence = flatness_evidence(&m, &catalog).map_err(|e| e.to_string())?;
    if !evidence.verdict {
        return Err(evidence.summary());
    }
    let eta = EtaHypothesis::Asserted(
        "P = −λ·id makes the inclusion of R into its operator ring injective".into(),
    );
    let report = flat_iso_check(&m, &eta, &evidence).map_err(|e| e.to_string())?;
    if !report.passed() {
        return Err(report.render());
    }
    if flat_iso_check(&m, &EtaHypothesis::Unset, &evidence).is_ok() {
        return Err("the check ran without the η hypothesis".into());
    }
    family(corpus, &["flat.iso/scalar(E, 2)"])
}

fn criterion_10() -> Check {
    let options = VerifyOptions::default();
    let limit = Duration::from_secs(60);
    let mut runs = Vec::new();
    for _ in 0..2 {
        let t = Instant::now();
        let report = verify_paper(&options).map_err(|e| e.to_string())?;
        let elapsed = t.elapsed();
        if elapsed > limit {
            return Err(format!("run took {elapsed:?}"));
        }
        if !report.overall {
            let ids: Vec<_> = report.failures().map(|e| e.id.clone()).collect();
            return Err(format!("failures: {ids:?}"));
        }
        if report.seed != DEFAULT_SEED {
            return Err("seed not recorded".into());
        }
        runs.push(serde_json::to_string(&report.without_timing()).map_err(|e| e.to_string())?);
    }
    if runs[0] != runs[1] {
        return Err("two runs with the same seed differ".into());
    }
    Ok("two identical passing runs".into())
}

fn main() -> ExitCode {
    let corpus = Corpus::bundled(Field::Rational).expect("bundled corpus");
    let c = &corpus;
    let criteria: Vec<Criterion<'_>> = vec![
        (
            "Rota-Baxter axiom suite",
            Duration::from_secs(1),
            Box::new(|| criterion_1(c)),
        ),
        (
            "right self-module identity on E(λ)",
            Duration::from_secs(1),
            Box::new(|| criterion_2(c)),
        ),
        (
            "operator ring consistency",
            Duration::from_secs(10),
            Box::new(|| {
                family(
                    c,
                    &["opring.action_consistency/", "opring.multiply_consistency/"],
                )
            }),
        ),
        (
            "free module universal property and relations",
            Duration::from_secs(10),
            Box::new(|| family(c, &["freemod.universal/", "freemod.relations/"])),
        ),
        (
            "restricted free module",
            Duration::from_secs(5),
            Box::new(|| family(c, &["freemod.restricted/"])),
        ),
        (
            "Hom module structures",
            Duration::from_secs(5),
            Box::new(|| family(c, &["rbmod.hom_structures/"])),
        ),
        (
            "tensor suite",
            Duration::from_secs(10),
            Box::new(|| criterion_7(c)),
        ),
        (
            "free, projective, flat chain",
            Duration::from_secs(30),
            Box::new(|| {
                family(
                    c,
                    &[
                        "flat.free_projective/",
                        "flat.free_flat/",
                        "flat.summand_split/",
                    ],
                )
            }),
        ),
        (
            "M⊗R ≅ M for the scalar operator",
            Duration::from_secs(2),
            Box::new(|| criterion_9(c)),
        ),
        (
            "full verification run",
            Duration::from_secs(120),
            Box::new(criterion_10),
        ),
    ];
    let mut failed = 0;
    for (k, (name, bound, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = run();
        let elapsed = t.elapsed();
        let result = match result {
            Ok(detail) if elapsed > *bound => {
                Err(format!("{detail}, but took {elapsed:?} > {bound:?}"))
            }
            other => other,
        };
        match result {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail}, {elapsed:.2?})", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why} ({elapsed:.2?})", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
