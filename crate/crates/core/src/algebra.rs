//! Finite-dimensional unital algebras with a weighted linear operator, the
//! Rota-Baxter axiom checkers, and the bundled example constructors.
//!
//! Every identity here is bilinear in its arguments, so it is checked on
//! pairs of basis vectors only.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{vector, Field, Matrix, Scalar, Vector};
use crate::report::AxiomReport;

/// A unital associative algebra given by structure constants
/// `eᵢ·eⱼ = Σₖ c[i][j][k] eₖ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: Field,
    labels: Vec<String>,
    constants: Vec<Vec<Vector>>,
    unit: Vector,
    /// Left multiplication by `eᵢ`, images as columns.
    left: Vec<Matrix>,
    /// Right multiplication by `eᵢ`.
    right: Vec<Matrix>,
}

impl Algebra {
    /// Validates associativity and the unit laws on all basis triples/pairs.
    pub fn new(
        field: Field,
        labels: Vec<String>,
        constants: Vec<Vec<Vector>>,
        unit: Vector,
    ) -> Result<Algebra> {
        let d = labels.len();
        let shape_ok = constants.len() == d
            && constants
                .iter()
                .all(|row| row.len() == d && row.iter().all(|v| v.len() == d))
            && unit.len() == d;
        if !shape_ok {
            return Err(Error::Dimension(format!(
                "structure constants must be {d}×{d}×{d} and the unit of length {d}"
            )));
        }
        let left = (0..d)
            .map(|i| Matrix::from_fn(field, d, d, |k, j| constants[i][j][k].clone()))
            .collect();
        let right = (0..d)
            .map(|i| Matrix::from_fn(field, d, d, |k, j| constants[j][i][k].clone()))
            .collect();
        let algebra = Algebra {
            field,
            labels,
            constants,
            unit,
            left,
            right,
        };
        algebra.validate()?;
        Ok(algebra)
    }

    fn validate(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let eij = &self.constants[i][j];
                for k in 0..d {
                    let lhs = self.multiply(eij, &self.basis(k));
                    let rhs = self.multiply(&self.basis(i), &self.constants[j][k]);
                    if lhs != rhs {
                        return Err(Error::NotAnAlgebra {
                            what: "associative",
                            detail: format!(
                                "({}·{})·{} ≠ {}·({}·{})",
                                self.labels[i],
                                self.labels[j],
                                self.labels[k],
                                self.labels[i],
                                self.labels[j],
                                self.labels[k]
                            ),
                        });
                    }
                }
            }
            let e = self.basis(i);
            if self.multiply(&self.unit, &e) != e || self.multiply(&e, &self.unit) != e {
                return Err(Error::NotAnAlgebra {
                    what: "unital",
                    detail: format!("1·{0} or {0}·1 differs from {0}", self.labels[i]),
                });
            }
        }
        Ok(())
    }

    /// The one-dimensional algebra `k`.
    pub fn base_field(field: Field) -> Algebra {
        Algebra::new(
            field,
            vec!["1".into()],
            vec![vec![vec![field.one()]]],
            vec![field.one()],
        )
        .expect("k is an algebra")
    }

    /// `k u₀ ⊕ k u₁` with `u₀` the identity and `u₁² = −λ u₁`.
    pub fn unitized_line(weight: &Scalar) -> Algebra {
        let f = weight.field();
        let (z, o) = (f.zero(), f.one());
        let constants = vec![
            vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]],
            vec![vec![z.clone(), o.clone()], vec![z.clone(), -weight]],
        ];
        Algebra::new(f, vec!["u0".into(), "u1".into()], constants, vec![o, z])
            .expect("unitization is an algebra")
    }

    /// `k[x]/(x^{degree+1})` with basis `1, x, …, x^degree`.
    pub fn truncated_polynomials(field: Field, degree: usize) -> Algebra {
        let n = degree + 1;
        let constants = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i + j < n {
                            vector::unit(field, n, i + j)
                        } else {
                            vector::zeros(field, n)
                        }
                    })
                    .collect()
            })
            .collect();
        let labels = (0..n).map(|i| format!("x^{i}")).collect();
        Algebra::new(field, labels, constants, vector::unit(field, n, 0))
            .expect("polynomials form an algebra")
    }

    /// `A[x]/(x^{degree+1})`; basis `eᵢ·x^a` at index `a·dim(A) + i`.
    pub fn polynomial_extension(&self, degree: usize) -> Algebra {
        let d = self.dim();
        let n = d * (degree + 1);
        let f = self.field;
        let mut constants = vec![vec![vector::zeros(f, n); n]; n];
        for a in 0..=degree {
            for b in 0..=degree {
                if a + b > degree {
                    continue;
                }
                for i in 0..d {
                    for j in 0..d {
                        for k in 0..d {
                            constants[a * d + i][b * d + j][(a + b) * d + k] =
                                self.constants[i][j][k].clone();
                        }
                    }
                }
            }
        }
        let mut unit = vector::zeros(f, n);
        unit[..d].clone_from_slice(&self.unit);
        let labels = (0..=degree)
            .flat_map(|a| self.labels.iter().map(move |l| format!("{l}·x^{a}")))
            .collect();
        Algebra::new(f, labels, constants, unit).expect("polynomial extension is an algebra")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn structure_constants(&self) -> &[Vec<Vector>] {
        &self.constants
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn basis(&self, i: usize) -> Vector {
        vector::unit(self.field, self.dim(), i)
    }

    pub fn zero(&self) -> Vector {
        vector::zeros(self.field, self.dim())
    }

    pub fn multiply(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        assert_eq!(a.len(), self.dim(), "left factor has wrong length");
        assert_eq!(b.len(), self.dim(), "right factor has wrong length");
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                vector::axpy(&mut out, &(x * y), &self.constants[i][j]);
            }
        }
        out
    }

    /// Matrix of `x ↦ a·x`.
    pub fn left_mul(&self, a: &[Scalar]) -> Matrix {
        combine(self.field, self.dim(), &self.left, a)
    }

    /// Matrix of `x ↦ x·a`.
    pub fn right_mul(&self, a: &[Scalar]) -> Matrix {
        combine(self.field, self.dim(), &self.right, a)
    }

    pub fn left_basis_mul(&self, i: usize) -> &Matrix {
        &self.left[i]
    }

    pub fn right_basis_mul(&self, i: usize) -> &Matrix {
        &self.right[i]
    }
}

/// `Σ coeffs[i] · mats[i]`.
pub(crate) fn combine(field: Field, n: usize, mats: &[Matrix], coeffs: &[Scalar]) -> Matrix {
    assert_eq!(mats.len(), coeffs.len(), "coefficient count mismatch");
    let (rows, cols) = mats.first().map_or((n, n), |m| (m.rows(), m.cols()));
    let mut out = Matrix::zeros(field, rows, cols);
    for (m, c) in mats.iter().zip(coeffs) {
        out.axpy(c, m);
    }
    out
}

/// A finite-dimensional algebra `R` with a weight `λ` and a linear operator
/// `P`, the data of a (candidate) Rota-Baxter algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPresentation {
    algebra: Algebra,
    weight: Scalar,
    operator: Matrix,
}

impl AlgebraPresentation {
    pub fn new(algebra: Algebra, weight: Scalar, operator: Matrix) -> Result<AlgebraPresentation> {
        let d = algebra.dim();
        if operator.rows() != d || operator.cols() != d {
            return Err(Error::Dimension(format!("operator must be {d}×{d}")));
        }
        if weight.field() != algebra.field() || operator.field() != algebra.field() {
            return Err(Error::FieldMismatch(
                algebra.field().name(),
                weight.field().name(),
            ));
        }
        Ok(AlgebraPresentation {
            algebra,
            weight,
            operator,
        })
    }

    /// The two-dimensional algebra `E(λ)`: `u₀` the identity, `u₁² = −λu₁`,
    /// `P(u₀) = u₁`, `P(u₁) = −λu₁`.
    pub fn example_e(weight: &Scalar) -> AlgebraPresentation {
        let f = weight.field();
        let operator = Matrix::from_rows(f, vec![vec![f.zero(), f.zero()], vec![f.one(), -weight]])
            .expect("2×2");
        AlgebraPresentation::new(Algebra::unitized_line(weight), weight.clone(), operator)
            .expect("well-formed")
    }

    /// `P = −λ·id`, a Rota-Baxter operator of weight `λ` on any algebra.
    pub fn scalar_operator(algebra: Algebra, weight: &Scalar) -> AlgebraPresentation {
        let operator = Matrix::scalar(algebra.field(), algebra.dim(), &-weight);
        AlgebraPresentation::new(algebra, weight.clone(), operator).expect("well-formed")
    }

    pub fn zero_operator(algebra: Algebra, weight: &Scalar) -> AlgebraPresentation {
        let operator = Matrix::zeros(algebra.field(), algebra.dim(), algebra.dim());
        AlgebraPresentation::new(algebra, weight.clone(), operator).expect("well-formed")
    }

    /// Weight-zero integration `xⁿ ↦ xⁿ⁺¹/(n+1)` on `k[x]/(x^{degree+1})`.
    pub fn integration(field: Field, degree: usize) -> AlgebraPresentation {
        let n = degree + 1;
        let operator = Matrix::from_fn(field, n, n, |r, c| {
            if r == c + 1 {
                field.ratio(1, r as i64)
            } else {
                field.zero()
            }
        });
        AlgebraPresentation::new(
            Algebra::truncated_polynomials(field, degree),
            field.zero(),
            operator,
        )
        .expect("well-formed")
    }

    /// `R[x]/(x^{degree+1})` with the coefficientwise operator `Σ cₐxᵃ ↦ Σ P(cₐ)xᵃ`.
    pub fn polynomial_extension(&self, degree: usize) -> AlgebraPresentation {
        let blocks = vec![self.operator.clone(); degree + 1];
        AlgebraPresentation::new(
            self.algebra.polynomial_extension(degree),
            self.weight.clone(),
            Matrix::block_diag(self.field(), &blocks),
        )
        .expect("well-formed")
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn weight(&self) -> &Scalar {
        &self.weight
    }

    pub fn operator(&self) -> &Matrix {
        &self.operator
    }

    pub fn unit(&self) -> &Vector {
        self.algebra.unit()
    }

    pub fn basis(&self, i: usize) -> Vector {
        self.algebra.basis(i)
    }

    pub fn label(&self, i: usize) -> &str {
        self.algebra.label(i)
    }

    pub fn multiply(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        self.algebra.multiply(a, b)
    }

    /// `P(x)`
    pub fn apply(&self, x: &[Scalar]) -> Vector {
        self.operator.mul_vec(x)
    }

    /// `x` as a combination of basis labels, e.g. `2·u0 - u1`.
    pub fn render(&self, x: &[Scalar]) -> String {
        vector::render_combination(
            x.iter()
                .enumerate()
                .map(|(i, c)| (c, self.label(i).to_string())),
        )
    }

    /// `P(r)P(s) = P(rP(s)) + P(P(r)s) + λP(rs)` on all basis pairs.
    pub fn check_rota_baxter(&self) -> AxiomReport {
        let mut report =
            AxiomReport::new("Rota-Baxter axiom P(r)P(s) = P(rP(s)) + P(P(r)s) + λP(rs)");
        let lam = &self.weight;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let (r, s) = (self.basis(i), self.basis(j));
                let (pr, ps) = (self.apply(&r), self.apply(&s));
                let lhs = self.multiply(&pr, &ps);
                let mut rhs = self.apply(&self.multiply(&r, &ps));
                rhs = vector::add(&rhs, &self.apply(&self.multiply(&pr, &s)));
                rhs = vector::add(
                    &rhs,
                    &vector::scale(lam, &self.apply(&self.multiply(&r, &s))),
                );
                report.compare(|| self.pair(i, j), lhs, rhs);
            }
        }
        report
    }

    /// `2P(P(r)s) + λP(rs) + λP(r)s = 0` on all basis pairs. Given the
    /// Rota-Baxter axiom this is equivalent to `(R, P)` being a right module
    /// over itself.
    pub fn check_right_self_module(&self) -> AxiomReport {
        let mut report =
            AxiomReport::new("right self-module identity 2P(P(r)s) + λP(rs) + λP(r)s = 0");
        let f = self.field();
        let lam = &self.weight;
        let two = f.from_i64(2);
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let (r, s) = (self.basis(i), self.basis(j));
                let pr = self.apply(&r);
                let mut lhs = vector::scale(&two, &self.apply(&self.multiply(&pr, &s)));
                lhs = vector::add(
                    &lhs,
                    &vector::scale(lam, &self.apply(&self.multiply(&r, &s))),
                );
                lhs = vector::add(&lhs, &vector::scale(lam, &self.multiply(&pr, &s)));
                report.compare(|| self.pair(i, j), lhs, self.algebra.zero());
            }
        }
        report
    }

    /// `P` is left and right `R`-linear and `P(1) ∈ {0, −λ·1}`: the
    /// sufficient condition for `(R, P)` to be a bimodule over itself.
    pub fn check_bimodule_self(&self) -> AxiomReport {
        let mut report = AxiomReport::new("P is R-linear on both sides and P(1) ∈ {0, −λ·1}");
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let (r, s) = (self.basis(i), self.basis(j));
                let prs = self.apply(&self.multiply(&r, &s));
                report.compare(
                    || format!("left linearity at {}", self.pair(i, j)),
                    prs.clone(),
                    self.multiply(&r, &self.apply(&s)),
                );
                report.compare(
                    || format!("right linearity at {}", self.pair(i, j)),
                    prs,
                    self.multiply(&self.apply(&r), &s),
                );
            }
        }
        let p1 = self.apply(self.unit());
        let minus_lambda = vector::scale(&-&self.weight, self.unit());
        if !vector::is_zero(&p1) && p1 != minus_lambda {
            report.fail("P(1) is neither 0 nor −λ·1", p1, minus_lambda);
        }
        report
    }

    pub(crate) fn pair(&self, i: usize, j: usize) -> String {
        format!("(r, s) = ({}, {})", self.label(i), self.label(j))
    }

    pub fn same_algebra(a: &Arc<AlgebraPresentation>, b: &Arc<AlgebraPresentation>) -> bool {
        Arc::ptr_eq(a, b) || a == b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn lambdas() -> Vec<Scalar> {
        let f = q();
        vec![
            f.from_i64(0),
            f.from_i64(1),
            f.from_i64(-1),
            f.from_i64(2),
            f.from_i64(3),
            f.ratio(1, 2),
        ]
    }

    #[test]
    fn example_e_products() {
        let lam = q().from_i64(3);
        let e = AlgebraPresentation::example_e(&lam);
        let (u0, u1) = (e.basis(0), e.basis(1));
        assert_eq!(e.multiply(&u0, &u0), u0);
        assert_eq!(e.multiply(&u1, &u1), vector::scale(&-&lam, &u1));
        let b = vec![q().from_i64(4), q().from_i64(-2)];
        assert_eq!(e.multiply(e.unit(), &b), b);
    }

    #[test]
    fn example_e_operator_columns() {
        let e = AlgebraPresentation::example_e(&q().one());
        let f = q();
        assert_eq!(e.operator().column(0), vec![f.zero(), f.one()]);
        assert_eq!(e.operator().column(1), vec![f.zero(), f.from_i64(-1)]);
        let e0 = AlgebraPresentation::example_e(&q().zero());
        assert!(vector::is_zero(&e0.multiply(&e0.basis(1), &e0.basis(1))));
        assert!(vector::is_zero(&e0.apply(&e0.basis(1))));
    }

    #[test]
    fn example_e_is_rota_baxter_and_right_self_module() {
        for lam in lambdas() {
            let e = AlgebraPresentation::example_e(&lam);
            assert!(e.check_rota_baxter().passed(), "λ = {lam}");
            assert!(e.check_right_self_module().passed(), "λ = {lam}");
        }
    }

    #[test]
    fn spot_identity_p_u0_squared() {
        // P(u0)P(u0) = −λu1
        let lam = q().from_i64(3);
        let e = AlgebraPresentation::example_e(&lam);
        let pu0 = e.apply(&e.basis(0));
        assert_eq!(e.multiply(&pu0, &pu0), vector::scale(&-&lam, &e.basis(1)));
    }

    #[test]
    fn zero_operator_always_passes() {
        let lam = q().from_i64(5);
        for a in [
            Algebra::base_field(q()),
            Algebra::unitized_line(&lam),
            Algebra::truncated_polynomials(q(), 3),
        ] {
            let p = AlgebraPresentation::zero_operator(a, &lam);
            assert!(p.check_rota_baxter().passed());
            assert!(p.check_bimodule_self().passed());
        }
    }

    #[test]
    fn scalar_operator_passes_every_check() {
        let lam = q().from_i64(2);
        for a in [
            Algebra::base_field(q()),
            Algebra::unitized_line(&lam),
            Algebra::truncated_polynomials(q(), 2),
        ] {
            let p = AlgebraPresentation::scalar_operator(a, &lam);
            assert!(p.check_rota_baxter().passed());
            assert!(p.check_right_self_module().passed());
            assert!(p.check_bimodule_self().passed());
        }
    }

    #[test]
    fn integration_fails_right_identity_at_one_one() {
        let p = AlgebraPresentation::integration(q(), 3);
        assert!(p.check_rota_baxter().passed());
        let report = p.check_right_self_module();
        assert!(!report.passed());
        let w = report
            .witnesses
            .iter()
            .find(|w| w.instance == "(r, s) = (x^0, x^0)")
            .unwrap();
        // 2P(P(1)·1) = 2P(x) = x², the other two terms vanish at weight zero
        assert_eq!(w.lhs, vector::unit(q(), 4, 2));
    }

    #[test]
    fn example_e_is_not_a_self_bimodule_candidate() {
        let e = AlgebraPresentation::example_e(&q().one());
        let report = e.check_bimodule_self();
        assert!(!report.passed());
        // P is multiplication by u1, hence linear; only the P(1) condition fails
        assert_eq!(report.witnesses.len(), 1);
        assert_eq!(report.witnesses[0].lhs, e.basis(1));
    }

    #[test]
    fn polynomial_extensions() {
        let e1 = AlgebraPresentation::example_e(&q().one());
        let d0 = e1.polynomial_extension(0);
        assert_eq!(d0.dim(), 2);
        assert_eq!(d0.operator(), e1.operator());
        let d1 = e1.polynomial_extension(1);
        assert_eq!(d1.dim(), 4);
        assert!(d1.check_rota_baxter().passed());
        let s = AlgebraPresentation::scalar_operator(Algebra::base_field(q()), &q().from_i64(2));
        assert!(s.polynomial_extension(2).check_rota_baxter().passed());
    }

    #[test]
    fn non_associative_constants_rejected() {
        let f = q();
        // e1·e1 = e0 but e0 is not a unit for e1 with these constants
        let constants = vec![
            vec![vec![f.one(), f.zero()], vec![f.zero(), f.zero()]],
            vec![vec![f.zero(), f.zero()], vec![f.one(), f.zero()]],
        ];
        let r = Algebra::new(
            f,
            vec!["a".into(), "b".into()],
            constants,
            vec![f.one(), f.zero()],
        );
        assert!(r.is_err());
    }
}
