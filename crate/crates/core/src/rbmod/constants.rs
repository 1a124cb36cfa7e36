use serde::Serialize;

use super::module::{RbModule, Side};
use crate::algebra::AlgebraPresentation;
use crate::error::{Error, Result};
use crate::linalg::{vector, Matrix, Subspace, Vector};
use crate::report::AxiomReport;

/// `MC(M) = {m : p(r·m) = P(r)·m for all r}`, the kernel of the stacked
/// matrices `p·(eᵢ on M) − (P(eᵢ) on M)`.
pub fn module_constants(module: &RbModule) -> Result<Subspace> {
    module.require_side(Side::Left)?;
    module.require_verified()?;
    let alg = module.algebra();
    let n = module.dim();
    let blocks: Vec<Matrix> = (0..alg.dim())
        .map(|i| {
            let pr = module.action_of(&alg.apply(&alg.basis(i)));
            module.operator().mul(&module.action()[i]).sub(&pr)
        })
        .collect();
    if blocks.is_empty() || n == 0 {
        return Ok(Subspace::full(module.field(), n));
    }
    Ok(Matrix::vstack(module.field(), n, &blocks).kernel())
}

/// Whether `m` is a module constant, with the first violated instance.
pub fn module_constant_violation(
    module: &RbModule,
    m: &[crate::linalg::Scalar],
) -> Option<(usize, Vector, Vector)> {
    let alg = module.algebra();
    (0..alg.dim()).find_map(|i| {
        let lhs = module.apply(&module.act(&alg.basis(i), m));
        let rhs = module.act(&alg.apply(&alg.basis(i)), m);
        (lhs != rhs).then_some((i, lhs, rhs))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum McBranch {
    /// `P(1) = 0`
    Zero,
    /// `P(1) = −λ·1`
    NegLambda,
    /// `P(1)(P(1) + λ) = 0` holds but `P(1)` is neither root; the
    /// cancellation needs an algebra without zero divisors.
    NotForced,
}

#[derive(Clone, Debug, Serialize)]
pub struct McConsequence {
    pub report: AxiomReport,
    pub p_one: Vector,
    pub branch: McBranch,
}

/// Assuming `MC(R) = R` for the left self-module, checks `P(r) = P(1)·r` and
/// the factored identity `P(1)·(P(1) + λ·1) = 0`, then classifies `P(1)`.
pub fn check_mc_full_consequence(
    algebra: &std::sync::Arc<AlgebraPresentation>,
) -> Result<McConsequence> {
    let module = RbModule::regular(algebra.clone(), Side::Left).verify()?;
    let mc = module_constants(&module)?;
    if mc.dim() != module.dim() {
        return Err(Error::Precondition(format!(
            "MC(R) has dimension {} but R has dimension {}",
            mc.dim(),
            module.dim()
        )));
    }
    let unit = algebra.unit().clone();
    let p_one = algebra.apply(&unit);
    let mut report = AxiomReport::new("P(r) = P(1)·r and P(1)·(P(1) + λ·1) = 0");
    for i in 0..algebra.dim() {
        let r = algebra.basis(i);
        report.compare(
            || format!("P(r) = P(1)·r at r = {}", algebra.label(i)),
            algebra.apply(&r),
            algebra.multiply(&p_one, &r),
        );
    }
    let mut shifted = p_one.clone();
    vector::axpy(&mut shifted, algebra.weight(), &unit);
    report.compare(
        || "P(1)·(P(1) + λ·1)".to_string(),
        algebra.multiply(&p_one, &shifted),
        algebra.algebra().zero(),
    );
    let branch = if vector::is_zero(&p_one) {
        McBranch::Zero
    } else if vector::is_zero(&shifted) {
        McBranch::NegLambda
    } else {
        McBranch::NotForced
    };
    Ok(McConsequence {
        report,
        p_one,
        branch,
    })
}
