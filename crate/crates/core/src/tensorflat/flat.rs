use std::sync::Arc;

use serde::Serialize;

use super::tensor::{induced_map, induced_map_left, tensor_product};
use crate::algebra::AlgebraPresentation;
use crate::error::{Error, Result};
use crate::freemod::free_rb_module;
use crate::linalg::{Matrix, Subspace, Vector};
use crate::opring::OpRing;
use crate::rbmod::{direct_sum, ModuleMap, RbModule, Side};
use crate::report::AxiomReport;

/// Flatness and injectivity tests only ever see a finite catalog.
pub const EVIDENCE_SCOPE: &str = "evidence relative to catalog";

/// A named injective module map.
#[derive(Clone, Debug)]
pub struct Mono {
    pub name: String,
    pub map: ModuleMap,
}

impl Mono {
    pub fn new(name: impl Into<String>, map: ModuleMap) -> Result<Mono> {
        let name = name.into();
        if !map.is_injective() {
            return Err(Error::Precondition(format!("{name} is not injective")));
        }
        Ok(Mono { name, map })
    }

    pub fn side(&self) -> Side {
        self.map.source().side()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactnessEntry {
    pub mono: String,
    pub source_dim: usize,
    pub target_dim: usize,
    pub tensored_source_dim: usize,
    pub tensored_target_dim: usize,
    pub rank_after: usize,
    pub injective: bool,
    pub tensored_map: Matrix,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactnessReport {
    pub scope: &'static str,
    pub verdict: bool,
    pub entries: Vec<ExactnessEntry>,
}

impl ExactnessReport {
    pub fn failures(&self) -> impl Iterator<Item = &ExactnessEntry> {
        self.entries.iter().filter(|e| !e.injective)
    }

    /// `"no witness found"` or the first non-injective catalog entry.
    pub fn summary(&self) -> String {
        match self.failures().next() {
            None => format!(
                "no witness found among {} monomorphisms ({EVIDENCE_SCOPE})",
                self.entries.len()
            ),
            Some(e) => format!(
                "witness: {} stops being injective after tensoring ({EVIDENCE_SCOPE})",
                e.mono
            ),
        }
    }
}

/// Tensors every catalog mono with `M` and records whether it stays
/// injective. A right `M` uses monos of left modules (`id_M ⊗ i`), a left
/// `M` monos of right modules (`i ⊗ id_M`).
pub fn flatness_evidence(m: &RbModule, monos: &[Mono]) -> Result<ExactnessReport> {
    m.require_verified()?;
    let mut entries = Vec::with_capacity(monos.len());
    for mono in monos {
        if !mono.map.is_injective() {
            return Err(Error::Precondition(format!(
                "{} is not injective",
                mono.name
            )));
        }
        if mono.side() == m.side() {
            return Err(Error::Mismatch(format!(
                "{} lives on the same side as the module",
                mono.name
            )));
        }
        let (src, tgt) = (mono.map.source(), mono.map.target());
        let (ts, tt, matrix) = match m.side() {
            Side::Right => {
                let (ts, tt) = (tensor_product(m, src)?, tensor_product(m, tgt)?);
                let k = induced_map(&ts, &tt, &mono.map)?;
                (ts, tt, k)
            }
            Side::Left => {
                let (ts, tt) = (tensor_product(src, m)?, tensor_product(tgt, m)?);
                let k = induced_map_left(&ts, &tt, &mono.map)?;
                (ts, tt, k)
            }
        };
        let rank_after = matrix.rank();
        entries.push(ExactnessEntry {
            mono: mono.name.clone(),
            source_dim: src.dim(),
            target_dim: tgt.dim(),
            tensored_source_dim: ts.dim(),
            tensored_target_dim: tt.dim(),
            rank_after,
            injective: rank_after == ts.dim(),
            tensored_map: matrix,
        });
    }
    let verdict = entries.iter().all(|e| e.injective);
    Ok(ExactnessReport {
        scope: EVIDENCE_SCOPE,
        verdict,
        entries,
    })
}

/// On the same catalog, `⊕ Mᵢ` passes exactly when every `Mᵢ` does, and
/// for each mono the kernel after tensoring with the sum has the summed
/// dimension of the individual kernels.
pub fn direct_sum_flatness_check(
    algebra: &Arc<AlgebraPresentation>,
    side: Side,
    modules: &[RbModule],
    monos: &[Mono],
) -> Result<AxiomReport> {
    let sum = direct_sum(algebra, side, modules)?.module;
    let whole = flatness_evidence(&sum, monos)?;
    let parts = modules
        .iter()
        .map(|m| flatness_evidence(m, monos))
        .collect::<Result<Vec<_>>>()?;
    let f = algebra.field();
    let num = |x: usize| -> Vector { vec![f.from_i64(x as i64)] };
    let mut report = AxiomReport::new("⊕Mᵢ passes the catalog iff every Mᵢ does; kernels add up");
    let all_parts = parts.iter().all(|p| p.verdict);
    report.compare(
        || "verdict of the sum against the verdicts of the summands".into(),
        num(usize::from(whole.verdict)),
        num(usize::from(all_parts)),
    );
    for (k, entry) in whole.entries.iter().enumerate() {
        let kernel = |e: &ExactnessEntry| e.tensored_source_dim - e.rank_after;
        let summed: usize = parts.iter().map(|p| kernel(&p.entries[k])).sum();
        report.compare(
            || format!("kernel dimension after tensoring {}", entry.mono),
            num(kernel(entry)),
            num(summed),
        );
        let dims: usize = parts.iter().map(|p| p.entries[k].tensored_source_dim).sum();
        report.compare(
            || format!("dim (⊕Mᵢ)⊗{} = Σ dim Mᵢ⊗{}", entry.mono, entry.mono),
            num(entry.tensored_source_dim),
            num(dims),
        );
    }
    Ok(report)
}

/// Every submodule generated by one vector with coordinates in `{−1, 0, 1}`,
/// excluding `0` and the whole module, without repeats.
pub fn submodule_search(module: &RbModule) -> Vec<Subspace> {
    let n = module.dim();
    let f = module.field();
    let mut found: Vec<Subspace> = Vec::new();
    let mut index = vec![0usize; n];
    while crate::opring::advance(&mut index, 3) {
        let v: Vector = index.iter().map(|&i| f.from_i64(i as i64 - 1)).collect();
        let sub = module.generated_submodule(vec![v]);
        if sub.dim() > 0 && sub.dim() < n && !found.contains(&sub) {
            found.push(sub);
        }
    }
    found.sort_by_key(|s| s.dim());
    found
}

/// The monomorphism catalog over a list of named target modules (same
/// algebra and side): identity maps, the two block inclusions and the
/// diagonal into `T ⊕ T`, and, for targets of dimension at most
/// `search_dim`, every submodule inclusion found by [`submodule_search`].
pub fn mono_catalog(targets: &[(String, RbModule)], search_dim: usize) -> Result<Vec<Mono>> {
    let mut monos = Vec::new();
    for (name, t) in targets {
        if t.dim() == 0 {
            continue;
        }
        monos.push(Mono::new(format!("id on {name}"), ModuleMap::identity(t))?);
        let sum = direct_sum(t.algebra(), t.side(), &[t.clone(), t.clone()])?;
        monos.push(Mono::new(
            format!("{name} → {name}⊕{name}, first block"),
            sum.injections[0].clone(),
        )?);
        monos.push(Mono::new(
            format!("{name} → {name}⊕{name}, second block"),
            sum.injections[1].clone(),
        )?);
        let diagonal = sum.injections[0].add(&sum.injections[1])?;
        monos.push(Mono::new(
            format!("diagonal {name} → {name}⊕{name}"),
            diagonal,
        )?);
        if t.dim() <= search_dim {
            for sub in submodule_search(t) {
                let (_, inclusion) = t.submodule(&sub)?;
                let gens: Vec<String> = sub
                    .basis()
                    .iter()
                    .map(|v| crate::linalg::vector::render(v))
                    .collect();
                monos.push(Mono::new(
                    format!("span{{{}}} ⊂ {name}", gens.join(", ")),
                    inclusion,
                )?);
            }
        }
    }
    Ok(monos)
}

/// Dimension bound for the exhaustive submodule search in the catalog.
pub const SEARCH_DIM: usize = 4;

/// The bundled catalog on one side: built by [`mono_catalog`] over the
/// regular module and the operator ring, plus, on the left, the embedding
/// `r ↦ r·x` of `R` into the free module and an automorphism of `F(x, y)`.
pub fn standard_catalog(alg: &Arc<AlgebraPresentation>, side: Side) -> Result<Vec<Mono>> {
    let ring = OpRing::new(alg.clone());
    let d = match side {
        Side::Left => ring.left_module()?,
        Side::Right => ring.right_module()?,
    };
    let targets = vec![
        (
            "R".to_string(),
            RbModule::regular(alg.clone(), side).verify()?,
        ),
        ("D".to_string(), d),
    ];
    let mut monos = mono_catalog(&targets, SEARCH_DIM)?;
    if side == Side::Left {
        let free = free_rb_module(alg, vec!["x".into(), "y".into()])?;
        let r = RbModule::regular(alg.clone(), Side::Left).verify()?;
        let j = free.universal_map(&[free.j(0), free.j(1)], free.module())?;
        monos.push(Mono::new("id on F(x,y) via the universal map", j)?);
        let embed = ModuleMap::new(
            r.clone(),
            free.module().clone(),
            Matrix::from_columns(
                alg.field(),
                free.module().dim(),
                &(0..r.dim())
                    .map(|i| free.element(0, &ring.eta(&alg.basis(i))))
                    .collect::<Vec<_>>(),
            ),
        );
        if let Ok(embed) = embed {
            monos.push(Mono::new("R → F(x), r ↦ r·x", embed)?);
        }
    }
    Ok(monos)
}
