//! Tensor products over `(R, P)`, scalar extension and the tensor-Hom
//! adjunction, plus catalog-relative evidence for projectivity, flatness
//! and injectivity.

mod baer;
mod flat;
mod flatiso;
mod projective;
mod tensor;

pub use baer::{baer_extension_test, op_ring_ideals, BaerEntry, BaerReport};
pub use flat::{
    direct_sum_flatness_check, flatness_evidence, mono_catalog, standard_catalog, submodule_search,
    ExactnessEntry, ExactnessReport, Mono, EVIDENCE_SCOPE, SEARCH_DIM,
};
pub use flatiso::{flat_iso_check, EtaHypothesis};
pub use projective::{projective_lift, projective_summand_split, SplitSummary, SummandSplit};
pub use tensor::{
    adjunction_check, induced_map, induced_map_left, right_exactness_check, scalar_extension,
    scalar_extension_right, tensor_product, AdjunctionReport, ScalarExtension, TensorPresentation,
};

#[cfg(test)]
mod tests;
