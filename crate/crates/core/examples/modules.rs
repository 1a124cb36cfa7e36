//! Regular modules, a submodule and its quotient, and module constants.

use std::sync::Arc;

use rbmod::linalg::vector;
use rbmod::rbmod::{check_mc_full_consequence, module_constants};
use rbmod::{AlgebraPresentation, Field, Matrix, RbModule, Side, Subspace};

fn main() -> rbmod::Result<()> {
    let q = Field::Rational;
    let e = Arc::new(AlgebraPresentation::example_e(&q.one()));
    let left = RbModule::regular(e.clone(), Side::Left).verify()?;
    let ideal = Subspace::span(q, 2, [vector::unit(q, 2, 1)]);
    let (sub, _) = left.submodule(&ideal)?;
    let (quot, _) = left.quotient(&ideal)?;
    println!("span{{u1}}: {}", sub.check().render());
    println!("E(1)/span{{u1}}: {}", quot.check().render());

    let broken = left.with_operator(Matrix::identity(q, 2))?;
    println!("p = id: {}", broken.check().render());

    println!("MC(E(1)) has dimension {}", module_constants(&left)?.dim());
    let c = check_mc_full_consequence(&e)?;
    println!("P(1) = {}, branch {:?}", e.render(&c.p_one), c.branch);
    Ok(())
}
