use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::maps::ModuleMap;
use crate::algebra::{combine, AlgebraPresentation};
use crate::error::{Error, Result};
use crate::linalg::{vector, Field, Matrix, Scalar, Subspace, Vector};
use crate::report::AxiomReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// A finite-dimensional one-sided module over `(R, P)` with an operator `p`.
///
/// `action[i]` is the matrix of `v ↦ eᵢ·v` (left) or `v ↦ v·eᵢ` (right).
/// The module axioms are enforced at construction; the Rota-Baxter identity
/// for the side is only recorded once [`RbModule::verify`] succeeds, and the
/// downstream constructions refuse modules without that mark.
#[derive(Clone, Debug)]
pub struct RbModule {
    algebra: Arc<AlgebraPresentation>,
    side: Side,
    dim: usize,
    action: Vec<Matrix>,
    operator: Matrix,
    verified: bool,
}

impl PartialEq for RbModule {
    fn eq(&self, other: &RbModule) -> bool {
        AlgebraPresentation::same_algebra(&self.algebra, &other.algebra)
            && self.side == other.side
            && self.action == other.action
            && self.operator == other.operator
    }
}

impl RbModule {
    pub fn new(
        algebra: Arc<AlgebraPresentation>,
        side: Side,
        action: Vec<Matrix>,
        operator: Matrix,
    ) -> Result<RbModule> {
        let dim = operator.rows();
        if !operator.is_square() {
            return Err(Error::Dimension("module operator must be square".into()));
        }
        if action.len() != algebra.dim()
            || action.iter().any(|a| a.rows() != dim || a.cols() != dim)
        {
            return Err(Error::Dimension(format!(
                "expected {} action matrices of size {dim}×{dim}",
                algebra.dim()
            )));
        }
        let m = RbModule {
            algebra,
            side,
            dim,
            action,
            operator,
            verified: false,
        };
        m.check_module_axioms()?;
        Ok(m)
    }

    fn check_module_axioms(&self) -> Result<()> {
        let alg = self.algebra.algebra();
        let d = alg.dim();
        for i in 0..d {
            for j in 0..d {
                let product = self.action_of(&alg.structure_constants()[i][j]);
                let composite = match self.side {
                    Side::Left => self.action[i].mul(&self.action[j]),
                    Side::Right => self.action[j].mul(&self.action[i]),
                };
                if product != composite {
                    return Err(Error::NotAModule(format!(
                        "action of {}·{} disagrees with the composite action",
                        alg.label(i),
                        alg.label(j)
                    )));
                }
            }
        }
        if !self.action_of(alg.unit()).is_identity() {
            return Err(Error::NotAModule(
                "the unit does not act as the identity".into(),
            ));
        }
        Ok(())
    }

    /// `R` acting on itself by multiplication with `p = P`.
    pub fn regular(algebra: Arc<AlgebraPresentation>, side: Side) -> RbModule {
        let alg = algebra.algebra();
        let action = (0..alg.dim())
            .map(|i| match side {
                Side::Left => alg.left_basis_mul(i).clone(),
                Side::Right => alg.right_basis_mul(i).clone(),
            })
            .collect();
        let operator = algebra.operator().clone();
        RbModule::new(algebra, side, action, operator).expect("R is a module over itself")
    }

    pub fn zero(algebra: Arc<AlgebraPresentation>, side: Side) -> RbModule {
        let f = algebra.field();
        let action = vec![Matrix::zeros(f, 0, 0); algebra.dim()];
        let mut m =
            RbModule::new(algebra, side, action, Matrix::zeros(f, 0, 0)).expect("zero module");
        m.verified = true;
        m
    }

    /// Same underlying `R`-module with a different operator.
    pub fn with_operator(&self, operator: Matrix) -> Result<RbModule> {
        RbModule::new(
            self.algebra.clone(),
            self.side,
            self.action.clone(),
            operator,
        )
    }

    pub fn algebra(&self) -> &Arc<AlgebraPresentation> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    pub fn operator(&self) -> &Matrix {
        &self.operator
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn basis(&self, j: usize) -> Vector {
        vector::unit(self.field(), self.dim, j)
    }

    pub fn zero_vector(&self) -> Vector {
        vector::zeros(self.field(), self.dim)
    }

    /// Matrix of the action of the algebra element `x`.
    pub fn action_of(&self, x: &[Scalar]) -> Matrix {
        combine(self.field(), self.dim, &self.action, x)
    }

    /// `x·m` for left modules, `m·x` for right modules.
    pub fn act(&self, x: &[Scalar], m: &[Scalar]) -> Vector {
        self.action_of(x).mul_vec(m)
    }

    /// `p(m)`
    pub fn apply(&self, m: &[Scalar]) -> Vector {
        self.operator.mul_vec(m)
    }

    pub fn same_base(&self, other: &RbModule) -> bool {
        self.side == other.side && AlgebraPresentation::same_algebra(&self.algebra, &other.algebra)
    }

    pub(crate) fn require_same_base(&self, other: &RbModule) -> Result<()> {
        if self.same_base(other) {
            Ok(())
        } else {
            Err(Error::Mismatch(format!(
                "{}-module of dimension {} vs {}-module of dimension {}",
                self.side, self.dim, other.side, other.dim
            )))
        }
    }

    pub(crate) fn require_verified(&self) -> Result<()> {
        if self.verified {
            Ok(())
        } else {
            Err(Error::Unverified)
        }
    }

    pub(crate) fn require_side(&self, side: Side) -> Result<()> {
        if self.side == side {
            Ok(())
        } else {
            Err(Error::Mismatch(format!(
                "expected a {side} module, got a {} module",
                self.side
            )))
        }
    }

    /// The Rota-Baxter identity for this module's side.
    pub fn check(&self) -> AxiomReport {
        match self.side {
            Side::Left => self.rb_identity_left(),
            Side::Right => self.rb_identity_right(),
        }
    }

    /// `P(r)p(m) = p(P(r)m) + p(rp(m)) + λp(rm)` on basis pairs.
    pub fn check_left_rb(&self) -> Result<AxiomReport> {
        self.require_side(Side::Left)?;
        Ok(self.rb_identity_left())
    }

    /// `p(mP(r)) = p(m)P(r) + p(p(m)r) + λp(m)r` on basis pairs.
    pub fn check_right_rb(&self) -> Result<AxiomReport> {
        self.require_side(Side::Right)?;
        Ok(self.rb_identity_right())
    }

    fn rb_identity_left(&self) -> AxiomReport {
        let mut report =
            AxiomReport::new("left module identity P(r)p(m) = p(P(r)m) + p(rp(m)) + λp(rm)");
        let p = &self.operator;
        let lam = self.algebra.weight();
        for i in 0..self.algebra.dim() {
            let a_pr = self.action_of(&self.algebra.apply(&self.algebra.basis(i)));
            let a_r = &self.action[i];
            let lhs = a_pr.mul(p);
            let rhs = p
                .mul(&a_pr)
                .add(&p.mul(a_r).mul(p))
                .add(&p.mul(a_r).scale(lam));
            self.record_columns(&mut report, i, &lhs, &rhs);
        }
        report
    }

    fn rb_identity_right(&self) -> AxiomReport {
        let mut report =
            AxiomReport::new("right module identity p(mP(r)) = p(m)P(r) + p(p(m)r) + λp(m)r");
        let p = &self.operator;
        let lam = self.algebra.weight();
        for i in 0..self.algebra.dim() {
            let a_pr = self.action_of(&self.algebra.apply(&self.algebra.basis(i)));
            let a_r = &self.action[i];
            let lhs = p.mul(&a_pr);
            let rhs = a_pr
                .mul(p)
                .add(&p.mul(a_r).mul(p))
                .add(&a_r.mul(p).scale(lam));
            self.record_columns(&mut report, i, &lhs, &rhs);
        }
        report
    }

    fn record_columns(&self, report: &mut AxiomReport, i: usize, lhs: &Matrix, rhs: &Matrix) {
        for j in 0..self.dim {
            report.compare(
                || format!("(r, m) = ({}, v{j})", self.algebra.label(i)),
                lhs.column(j),
                rhs.column(j),
            );
        }
    }

    /// Runs the side's Rota-Baxter check and marks the module verified.
    pub fn verify(mut self) -> Result<RbModule> {
        let report = self.check();
        if !report.passed() {
            return Err(Error::AxiomFailure {
                what: format!("{} Rota-Baxter module check", self.side),
                report,
            });
        }
        self.verified = true;
        Ok(self)
    }

    /// Smallest submodule containing the given vectors: closed under the
    /// action and the operator.
    pub fn generated_submodule(&self, generators: impl IntoIterator<Item = Vector>) -> Subspace {
        let mut span = Subspace::span(self.field(), self.dim, generators);
        loop {
            let mut images: Vec<Vector> = span.basis().to_vec();
            for b in span.basis() {
                images.extend(self.action.iter().map(|a| a.mul_vec(b)));
                images.push(self.apply(b));
            }
            let next = Subspace::span(self.field(), self.dim, images);
            if next.dim() == span.dim() {
                return span;
            }
            span = next;
        }
    }

    /// Reports the first operator (action or `p`) under which the subspace is not stable.
    pub fn stability_violation(&self, sub: &Subspace) -> Option<String> {
        for (i, a) in self.action.iter().enumerate() {
            if let Some(v) = sub.unstable_vector(a) {
                return Some(format!(
                    "{} · {} leaves the subspace",
                    self.algebra.label(i),
                    vector::render(&v)
                ));
            }
        }
        sub.unstable_vector(&self.operator)
            .map(|v| format!("p({}) leaves the subspace", vector::render(&v)))
    }

    /// The submodule on a stable subspace, with its inclusion.
    pub fn submodule(&self, sub: &Subspace) -> Result<(RbModule, ModuleMap)> {
        if sub.ambient() != self.dim {
            return Err(Error::Dimension(
                "subspace lives in a different space".into(),
            ));
        }
        if let Some(why) = self.stability_violation(sub) {
            return Err(Error::NotStable(why));
        }
        let action = self
            .action
            .iter()
            .map(|a| sub.restrict(a).expect("stable"))
            .collect();
        let operator = sub.restrict(&self.operator).expect("stable");
        let mut module = RbModule::new(self.algebra.clone(), self.side, action, operator)?;
        module.verified = self.verified;
        let inclusion = ModuleMap::new(module.clone(), self.clone(), sub.inclusion())?;
        Ok((module, inclusion))
    }

    /// `M/N` with the induced action and `p̄(m + N) = p(m) + N`, together with
    /// the projection.
    pub fn quotient(&self, sub: &Subspace) -> Result<(RbModule, ModuleMap)> {
        if sub.ambient() != self.dim {
            return Err(Error::Dimension(
                "subspace lives in a different space".into(),
            ));
        }
        if let Some(why) = self.stability_violation(sub) {
            return Err(Error::NotStable(why));
        }
        let q = sub.quotient();
        let action = self.action.iter().map(|a| q.induced(a, &q)).collect();
        let operator = q.induced(&self.operator, &q);
        let mut module = RbModule::new(self.algebra.clone(), self.side, action, operator)?;
        if self.verified {
            module = module.verify()?;
        }
        let projection = ModuleMap::new(self.clone(), module.clone(), q.projection_matrix())?;
        Ok((module, projection))
    }

    pub(crate) fn mark_verified(mut self) -> RbModule {
        self.verified = true;
        self
    }
}

/// `⊕ Mᵢ` with its canonical injections and projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: RbModule,
    pub injections: Vec<ModuleMap>,
    pub projections: Vec<ModuleMap>,
}

/// Block-diagonal action and operator. The result is verified iff every
/// summand is.
pub fn direct_sum(
    algebra: &Arc<AlgebraPresentation>,
    side: Side,
    summands: &[RbModule],
) -> Result<DirectSum> {
    for m in summands {
        if m.side != side || !AlgebraPresentation::same_algebra(&m.algebra, algebra) {
            return Err(Error::Mismatch(
                "direct sum of modules over different algebras or sides".into(),
            ));
        }
    }
    let f = algebra.field();
    let action = (0..algebra.dim())
        .map(|i| {
            let blocks: Vec<Matrix> = summands.iter().map(|m| m.action[i].clone()).collect();
            Matrix::block_diag(f, &blocks)
        })
        .collect();
    let ops: Vec<Matrix> = summands.iter().map(|m| m.operator.clone()).collect();
    let mut module = RbModule::new(algebra.clone(), side, action, Matrix::block_diag(f, &ops))?;
    if summands.iter().all(RbModule::is_verified) {
        module = module.verify()?;
    }
    let total = module.dim;
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    let mut offset = 0;
    for m in summands {
        let mut inj = Matrix::zeros(f, total, m.dim);
        inj.set_block(offset, 0, &Matrix::identity(f, m.dim));
        injections.push(ModuleMap::new(m.clone(), module.clone(), inj.clone())?);
        projections.push(ModuleMap::new(module.clone(), m.clone(), inj.transpose())?);
        offset += m.dim;
    }
    Ok(DirectSum {
        module,
        injections,
        projections,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;

    fn e(lam: i64) -> Arc<AlgebraPresentation> {
        Arc::new(AlgebraPresentation::example_e(
            &Field::Rational.from_i64(lam),
        ))
    }

    #[test]
    fn regular_modules_of_e_pass() {
        for lam in [0, 1, -1, 2, 3] {
            let alg = e(lam);
            assert!(RbModule::regular(alg.clone(), Side::Left)
                .check_left_rb()
                .unwrap()
                .passed());
            assert!(RbModule::regular(alg, Side::Right)
                .check_right_rb()
                .unwrap()
                .passed());
        }
    }

    #[test]
    fn scalar_operator_module_passes() {
        let lam = Field::Rational.from_i64(3);
        let alg = Arc::new(AlgebraPresentation::scalar_operator(
            Algebra::truncated_polynomials(Field::Rational, 2),
            &lam,
        ));
        let m = RbModule::regular(alg, Side::Left);
        assert!(m.check().passed());
    }

    #[test]
    fn identity_operator_fails_with_witness() {
        let alg = e(1);
        let f = alg.field();
        let left = RbModule::regular(alg.clone(), Side::Left)
            .with_operator(Matrix::identity(f, 2))
            .unwrap();
        let report = left.check_left_rb().unwrap();
        assert!(!report.passed());
        assert!(!report.witnesses.is_empty());
        let right = RbModule::regular(alg, Side::Right)
            .with_operator(Matrix::identity(f, 2))
            .unwrap();
        assert!(!right.check_right_rb().unwrap().passed());
        assert!(matches!(right.verify(), Err(Error::AxiomFailure { .. })));
    }

    #[test]
    fn side_mismatch_is_an_error() {
        let m = RbModule::regular(e(1), Side::Left);
        assert!(m.check_right_rb().is_err());
    }

    #[test]
    fn zero_module_passes_both_sides() {
        assert!(RbModule::zero(e(2), Side::Right)
            .check_right_rb()
            .unwrap()
            .passed());
        assert!(RbModule::zero(e(2), Side::Left)
            .check_left_rb()
            .unwrap()
            .passed());
    }

    #[test]
    fn quotient_by_rota_baxter_ideal() {
        let alg = e(1);
        let m = RbModule::regular(alg.clone(), Side::Left).verify().unwrap();
        let ideal = Subspace::span(alg.field(), 2, vec![alg.basis(1)]);
        let (q, proj) = m.quotient(&ideal).unwrap();
        assert_eq!(q.dim(), 1);
        assert!(q.is_verified());
        assert!(proj.is_surjective());
        let (same, _) = m.quotient(&Subspace::zero(alg.field(), 2)).unwrap();
        assert_eq!(same, m);
        let (zero, _) = m.quotient(&Subspace::full(alg.field(), 2)).unwrap();
        assert_eq!(zero.dim(), 0);
    }

    #[test]
    fn quotient_refuses_unstable_subspace() {
        let alg = e(1);
        let m = RbModule::regular(alg.clone(), Side::Left);
        // span{u0} is not a left ideal: u1·u0 = u1
        let bad = Subspace::span(alg.field(), 2, vec![alg.basis(0)]);
        assert!(matches!(m.quotient(&bad), Err(Error::NotStable(_))));
    }

    #[test]
    fn direct_sums() {
        let alg = e(1);
        let m = RbModule::regular(alg.clone(), Side::Left).verify().unwrap();
        let one = direct_sum(&alg, Side::Left, std::slice::from_ref(&m)).unwrap();
        assert_eq!(one.module, m);
        let two = direct_sum(&alg, Side::Left, &[m.clone(), m.clone()]).unwrap();
        assert_eq!(two.module.dim(), 4);
        assert!(two.module.is_verified());
        for (inj, proj) in two.injections.iter().zip(&two.projections) {
            assert!(proj.compose(inj).unwrap().matrix().is_identity());
        }
        let empty = direct_sum(&alg, Side::Left, &[]).unwrap();
        assert_eq!(empty.module.dim(), 0);
    }

    #[test]
    fn generated_submodule_is_stable() {
        let alg = e(1);
        let m = RbModule::regular(alg.clone(), Side::Left);
        let sub = m.generated_submodule(vec![alg.basis(1)]);
        assert_eq!(sub.dim(), 1);
        assert!(m.stability_violation(&sub).is_none());
        assert_eq!(m.generated_submodule(vec![alg.basis(0)]).dim(), 2);
    }
}
