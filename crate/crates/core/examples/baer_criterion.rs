//! Extending maps from left ideals of the operator ring.

use std::sync::Arc;

use rbmod::opring::OpRing;
use rbmod::tensorflat::{baer_extension_test, op_ring_ideals};
use rbmod::{AlgebraPresentation, Field, RbModule, Side};

fn main() -> rbmod::Result<()> {
    let e = Arc::new(AlgebraPresentation::example_e(&Field::Rational.one()));
    let ring = OpRing::new(e.clone());
    let ideals = op_ring_ideals(&ring)?;
    let target = RbModule::regular(e, Side::Left).verify()?;
    let report = baer_extension_test(&target, &ring, &ideals)?;
    for entry in &report.entries {
        println!(
            "{}: {} of {} extend",
            entry.ideal, entry.extended, entry.hom_dim
        );
    }
    println!("{}: {}", report.scope, report.verdict);
    Ok(())
}
