//! Rota-Baxter modules: one-sided modules and bimodules, their maps, Hom
//! spaces with the induced structures, and module constants.

mod bimodule;
mod constants;
pub(crate) mod equations;
mod hom;
mod maps;
mod module;

pub use bimodule::Bimodule;
pub use constants::{
    check_mc_full_consequence, module_constant_violation, module_constants, McBranch, McConsequence,
};
pub use hom::{
    hom_module, hom_space, hom_with_values, homs_vanishing_on, HomModule, HomSpace, HomStructure,
};
pub use maps::{homomorphism_report, ModuleMap};
pub use module::{direct_sum, DirectSum, RbModule, Side};
