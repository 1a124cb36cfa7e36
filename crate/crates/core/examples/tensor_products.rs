//! Tensor products, the universal property and the tensor-Hom adjunction.

use std::sync::Arc;

use rbmod::opring::OpRing;
use rbmod::tensorflat::{adjunction_check, tensor_product};
use rbmod::{AlgebraPresentation, Bimodule, Field, Matrix, RbModule, Side};

fn main() -> rbmod::Result<()> {
    let q = Field::Rational;
    for lam in [0, 1, 2] {
        let e = Arc::new(AlgebraPresentation::example_e(&q.from_i64(lam)));
        let t = tensor_product(
            &RbModule::regular(e.clone(), Side::Right).verify()?,
            &RbModule::regular(e, Side::Left).verify()?,
        )?;
        println!(
            "E({lam}) ⊗ E({lam}): dim {} spanned by {}",
            t.dim(),
            t.basis_labels().join(", ")
        );
    }
    let e = Arc::new(AlgebraPresentation::example_e(&q.one()));
    let m = RbModule::regular(e.clone(), Side::Right).verify()?;
    let d = OpRing::new(e.clone()).left_module()?;
    let t = tensor_product(&m, &d)?;
    let f = t.bilinear_functionals();
    let b = Matrix::from_rows(q, vec![f.basis()[0].clone()])?;
    let (factor, freedom) = t.factor(&b)?;
    println!(
        "E(1) ⊗ D: dim {}, factorization found {}, free parameters {freedom}",
        t.dim(),
        factor.is_some()
    );
    let r = adjunction_check(
        &m,
        &Bimodule::regular(e.clone()).verify()?,
        &OpRing::new(e).right_module()?,
    )?;
    println!(
        "adjunction: {} = {}, {}",
        r.lhs_dim,
        r.rhs_dim,
        r.report.render()
    );
    Ok(())
}
