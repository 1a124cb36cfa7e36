//! Hom spaces and the four induced module structures.

use std::sync::Arc;

use rbmod::rbmod::{hom_module, hom_space, HomStructure};
use rbmod::{AlgebraPresentation, Bimodule, Field, RbModule, Side};

fn main() -> rbmod::Result<()> {
    let e = Arc::new(AlgebraPresentation::example_e(&Field::Rational.one()));
    let bi = Bimodule::regular(e.clone()).verify()?;
    let left = RbModule::regular(e.clone(), Side::Left).verify()?;
    let right = RbModule::regular(e, Side::Right).verify()?;
    println!("dim End(E(1)) = {}", hom_space(&left, &left)?.dim());
    for s in [
        HomStructure::TargetLeft {
            source: &right,
            target: &bi,
        },
        HomStructure::TargetRight {
            source: &left,
            target: &bi,
        },
        HomStructure::SourceLeft {
            source: &bi,
            target: &left,
        },
        HomStructure::SourceRight {
            source: &bi,
            target: &right,
        },
    ] {
        let hm = hom_module(s)?;
        println!(
            "case {}: {} module of dim {}: {}",
            s.case(),
            hm.module.side(),
            hm.module.dim(),
            hm.module.check().render()
        );
    }
    Ok(())
}
