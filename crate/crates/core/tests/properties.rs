use proptest::prelude::*;

use rbmod::format::{AlgebraFile, Document};
use rbmod::{Algebra, AlgebraPresentation, Field, Matrix, Scalar};

fn q() -> Field {
    Field::Rational
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(proptest::collection::vec(-3i64..=3, cols), rows)
}

fn build(f: Field, rows: &[Vec<i64>]) -> Matrix {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    Matrix::from_i64(f, &refs)
}

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Rational),
        Just(Field::prime(5).unwrap()),
        Just(Field::prime(101).unwrap())
    ]
}

proptest! {
    #[test]
    fn rank_plus_nullity(f in field(), rows in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| matrix(r, c))) {
        let a = build(f, &rows);
        let kernel = a.kernel();
        prop_assert_eq!(a.rank() + kernel.dim(), a.cols());
        for v in kernel.basis() {
            prop_assert!(a.mul_vec(v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn rref_is_idempotent(f in field(), rows in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| matrix(r, c))) {
        let (once, pivots) = build(f, &rows).rref();
        let (twice, again) = once.rref();
        prop_assert_eq!(once, twice);
        prop_assert_eq!(pivots, again);
    }

    #[test]
    fn solve_finds_a_preimage(
        f in field(),
        (rows, x) in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| (matrix(r, c), proptest::collection::vec(-3i64..=3, c))),
    ) {
        let a = build(f, &rows);
        let x: Vec<Scalar> = x.into_iter().map(|n| f.from_i64(n)).collect();
        let b = a.mul_vec(&x);
        let y = a.solve(&b).unwrap().expect("b is in the image");
        prop_assert_eq!(a.mul_vec(&y), b);
    }

    /// The checker agrees with a direct evaluation of
    /// `P(r)P(s) − P(rP(s)) − P(P(r)s) − λP(rs)` on basis pairs.
    #[test]
    fn rota_baxter_check_matches_direct_evaluation(
        lambda in -2i64..=2,
        rows in matrix(2, 2),
    ) {
        let f = q();
        let weight = f.from_i64(lambda);
        let alg = AlgebraPresentation::new(Algebra::unitized_line(&weight), weight.clone(), build(f, &rows)).unwrap();
        let mut holds = true;
        for i in 0..2 {
            for j in 0..2 {
                let (r, s) = (alg.basis(i), alg.basis(j));
                let lhs = alg.multiply(&alg.apply(&r), &alg.apply(&s));
                let a = alg.apply(&alg.multiply(&r, &alg.apply(&s)));
                let b = alg.apply(&alg.multiply(&alg.apply(&r), &s));
                let c = alg.apply(&alg.multiply(&r, &s));
                for k in 0..2 {
                    if lhs[k].clone() != a[k].clone() + b[k].clone() + weight.clone() * c[k].clone() {
                        holds = false;
                    }
                }
            }
        }
        prop_assert_eq!(alg.check_rota_baxter().passed(), holds);
    }

    #[test]
    fn algebra_files_round_trip(num in -20i64..=20, den in 1i64..=9) {
        let alg = AlgebraPresentation::example_e(&q().ratio(num, den));
        let doc = Document::Algebra(AlgebraFile::from_presentation(&alg));
        let text = serde_json::to_string(&doc).unwrap();
        let back = Document::parse(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        let Document::Algebra(file) = back else { unreachable!() };
        prop_assert_eq!(file.to_presentation(q()).unwrap(), alg);
    }
}

#[test]
fn most_random_operators_are_refuted() {
    // Falsifiability: the checker is not vacuous on arbitrary operators.
    use rand::{Rng, SeedableRng};
    let f = q();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(50);
    let weight = f.one();
    let refuted = (0..50)
        .filter(|_| {
            let rows: Vec<Vec<i64>> = (0..2)
                .map(|_| (0..2).map(|_| rng.gen_range(-3..=3)).collect())
                .collect();
            let alg = AlgebraPresentation::new(
                Algebra::unitized_line(&weight),
                weight.clone(),
                build(f, &rows),
            )
            .unwrap();
            !alg.check_rota_baxter().passed()
        })
        .count();
    assert!(refuted >= 45, "only {refuted} of 50 refuted");
}
