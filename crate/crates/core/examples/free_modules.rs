//! The free module on one generator and its universal property.

use std::sync::Arc;

use rbmod::freemod::{free_rb_module, restricted_free};
use rbmod::{AlgebraPresentation, Error, Field, RbModule, Side};

fn main() -> rbmod::Result<()> {
    let q = Field::Rational;
    let e = Arc::new(AlgebraPresentation::example_e(&q.one()));
    let free = free_rb_module(&e, vec!["x".into()])?;
    let target = RbModule::regular(e.clone(), Side::Left).verify()?;
    let image = vec![q.from_i64(2), q.from_i64(-1)];
    let f = free.universal_map(std::slice::from_ref(&image), &target)?;
    println!("free module of dimension {}", free.module().dim());
    println!("f̄(j(x)) = {}", e.render(&f.matrix().mul_vec(&free.j(0))));
    println!(
        "other maps agreeing on j(x): {}",
        free.homs_vanishing_on_generators(&target)?
    );

    let rf = restricted_free(&e, vec!["x".into()])?;
    let zero_op = RbModule::regular(e.clone(), Side::Left)
        .with_operator(rbmod::Matrix::zeros(q, 2, 2))?
        .verify();
    match zero_op {
        Ok(m) => match rf.universal_map(&[image], &m) {
            Err(Error::NotModuleConstant { detail, .. }) => println!("refused: {detail}"),
            other => println!("accepted: {:?}", other.map(|m| m.rank())),
        },
        Err(e) => println!("p = 0 is not a module operator here: {e}"),
    }
    Ok(())
}
