use serde::Serialize;

use crate::error::{Error, Result};
use crate::freemod::{free_rb_module, FreeRbModule};
use crate::linalg::{vector, Subspace, Vector};
use crate::rbmod::equations::MatrixEquations;
use crate::rbmod::{ModuleMap, RbModule, Side};
use crate::report::AxiomReport;

/// Some `ḡ: V → N` with `f∘ḡ = g`, solving `R`-linearity, operator
/// compatibility and the factorization at once. `None` when the system is
/// inconsistent.
pub fn projective_lift(v: &RbModule, f: &ModuleMap, g: &ModuleMap) -> Result<Option<ModuleMap>> {
    if !f.is_surjective() {
        return Err(Error::Precondition(
            "the map to lift against is not surjective".into(),
        ));
    }
    if g.source() != v || g.target() != f.target() {
        return Err(Error::Mismatch(
            "g must go from V to the target of f".into(),
        ));
    }
    let n = f.source();
    v.require_verified()?;
    n.require_verified()?;
    f.target().require_verified()?;
    let mut eq = MatrixEquations::new(v.field(), n.dim(), v.dim());
    for (a, b) in v.action().iter().zip(n.action()) {
        eq.intertwine(a, b);
    }
    eq.intertwine(v.operator(), n.operator());
    eq.left_factor_equals(f.matrix(), g.matrix());
    match eq.solve()? {
        Some(m) => Ok(Some(ModuleMap::new(v.clone(), n.clone(), m)?)),
        None => Ok(None),
    }
}

/// `F = im β ⊕ ker f` for the canonical epi `f` from the free module on the
/// basis of `V` and a section `β` of it.
#[derive(Clone, Debug)]
pub struct SummandSplit {
    pub free: FreeRbModule,
    pub epi: ModuleMap,
    pub section: ModuleMap,
    pub image: Subspace,
    pub kernel: Subspace,
    pub report: AxiomReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct SplitSummary {
    pub free_dim: usize,
    pub image_dim: usize,
    pub kernel_dim: usize,
    pub verified: bool,
}

impl SummandSplit {
    pub fn summary(&self) -> SplitSummary {
        SplitSummary {
            free_dim: self.free.module().dim(),
            image_dim: self.image.dim(),
            kernel_dim: self.kernel.dim(),
            verified: self.report.passed(),
        }
    }
}

/// Lifts `id_V` through the canonical epi `F(basis of V) ↠ V`. A left module
/// is projective exactly when this succeeds, so `None` means not projective.
pub fn projective_summand_split(v: &RbModule) -> Result<Option<SummandSplit>> {
    v.require_side(Side::Left)?;
    v.require_verified()?;
    let gens = (0..v.dim()).map(|k| format!("x{k}")).collect();
    let free = free_rb_module(v.algebra(), gens)?;
    let images: Vec<Vector> = (0..v.dim()).map(|k| v.basis(k)).collect();
    let epi = free.universal_map(&images, v)?;
    let Some(section) = projective_lift(v, &epi, &ModuleMap::identity(v))? else {
        return Ok(None);
    };
    let fm = free.module();
    let f = v.field();
    let image = Subspace::full(f, v.dim()).image(section.matrix());
    let kernel = epi.kernel();
    let num = |x: usize| vec![f.from_i64(x as i64)];
    let mut report = AxiomReport::new("F = im β ⊕ ker f with both summands submodules");
    for k in 0..v.dim() {
        report.compare(
            || format!("f(β(v{k})) = v{k}"),
            epi.matrix().mul_vec(&section.matrix().mul_vec(&v.basis(k))),
            v.basis(k),
        );
    }
    report.compare(
        || "dim(im β + ker f)".into(),
        num(image.sum(&kernel).dim()),
        num(fm.dim()),
    );
    report.compare(
        || "dim(im β ∩ ker f)".into(),
        num(image.intersection(&kernel).dim()),
        num(0),
    );
    for (name, sub) in [("im β", &image), ("ker f", &kernel)] {
        if let Some(why) = fm.stability_violation(sub) {
            report.fail(
                format!("{name} is not a submodule: {why}"),
                vector::zeros(f, 0),
                vector::zeros(f, 0),
            );
        }
    }
    Ok(Some(SummandSplit {
        free,
        epi,
        section,
        image,
        kernel,
        report,
    }))
}
