use serde::Serialize;

use super::flat::EVIDENCE_SCOPE;
use crate::error::Result;
use crate::linalg::{vector, Subspace, Vector};
use crate::opring::OpRing;
use crate::rbmod::{hom_space, hom_with_values, RbModule};

#[derive(Clone, Debug, Serialize)]
pub struct BaerEntry {
    pub ideal: String,
    pub ideal_dim: usize,
    pub hom_dim: usize,
    pub extended: usize,
    pub all_extend: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BaerReport {
    pub scope: &'static str,
    pub verdict: bool,
    pub entries: Vec<BaerEntry>,
}

/// Left ideals of the operator ring, viewed as submodules of its left
/// module: the whole ring, the `Q`-block `span{eᵢQeⱼ}`, and the ideal
/// generated by each coordinate basis element.
pub fn op_ring_ideals(ring: &OpRing) -> Result<Vec<(String, Subspace)>> {
    let d_mod = ring.left_module()?;
    let f = ring.field();
    let d = ring.algebra().dim();
    let mut ideals: Vec<(String, Subspace)> = vec![
        ("whole ring".into(), Subspace::full(f, ring.dim())),
        (
            "Q-block".into(),
            Subspace::span(
                f,
                ring.dim(),
                (d..ring.dim()).map(|k| vector::unit(f, ring.dim(), k)),
            ),
        ),
    ];
    for k in 0..ring.dim() {
        let sub = d_mod.generated_submodule(vec![vector::unit(f, ring.dim(), k)]);
        if !ideals.iter().any(|(_, s)| *s == sub) {
            ideals.push((format!("generated by {}", ring.basis_label(k)), sub));
        }
    }
    Ok(ideals)
}

/// For each ideal `S` and each basis homomorphism `S → E`, tries to extend
/// it to the whole operator-ring module.
pub fn baer_extension_test(
    e: &RbModule,
    ring: &OpRing,
    ideals: &[(String, Subspace)],
) -> Result<BaerReport> {
    let d_mod = ring.left_module()?;
    let mut entries = Vec::new();
    for (name, sub) in ideals {
        let (s_mod, inclusion) = d_mod.submodule(sub)?;
        let homs = hom_space(&s_mod, e)?;
        let generators: Vec<Vector> = inclusion.matrix().columns();
        let mut extended = 0;
        for phi in homs.basis_matrices() {
            let images = phi.columns();
            if hom_with_values(&d_mod, e, &generators, &images)?.is_some() {
                extended += 1;
            }
        }
        entries.push(BaerEntry {
            ideal: name.clone(),
            ideal_dim: sub.dim(),
            hom_dim: homs.dim(),
            extended,
            all_extend: extended == homs.dim(),
        });
    }
    let verdict = entries.iter().all(|e| e.all_extend);
    Ok(BaerReport {
        scope: EVIDENCE_SCOPE,
        verdict,
        entries,
    })
}
