use super::module::RbModule;
use crate::error::{Error, Result};
use crate::linalg::{vector, Matrix, Subspace};
use crate::report::AxiomReport;

/// A homomorphism of Rota-Baxter modules: `R`-linear and `φ∘p = p'∘φ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleMap {
    source: RbModule,
    target: RbModule,
    matrix: Matrix,
}

impl ModuleMap {
    /// Checks both homomorphism conditions on basis elements.
    pub fn new(source: RbModule, target: RbModule, matrix: Matrix) -> Result<ModuleMap> {
        let report = homomorphism_report(&source, &target, &matrix)?;
        if !report.passed() {
            let w = &report.witnesses[0];
            return Err(Error::NotHomomorphism(format!(
                "{} at {}: {} ≠ {}",
                report.identity,
                w.instance,
                vector::render(&w.lhs),
                vector::render(&w.rhs)
            )));
        }
        Ok(ModuleMap {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(module: &RbModule) -> ModuleMap {
        let m = Matrix::identity(module.field(), module.dim());
        ModuleMap {
            source: module.clone(),
            target: module.clone(),
            matrix: m,
        }
    }

    pub fn zero(source: &RbModule, target: &RbModule) -> Result<ModuleMap> {
        source.require_same_base(target)?;
        let m = Matrix::zeros(source.field(), target.dim(), source.dim());
        Ok(ModuleMap {
            source: source.clone(),
            target: target.clone(),
            matrix: m,
        })
    }

    pub fn source(&self) -> &RbModule {
        &self.source
    }

    pub fn target(&self) -> &RbModule {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &ModuleMap) -> Result<ModuleMap> {
        if inner.target != self.source {
            return Err(Error::Mismatch("maps are not composable".into()));
        }
        Ok(ModuleMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&inner.matrix),
        })
    }

    pub fn add(&self, other: &ModuleMap) -> Result<ModuleMap> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Mismatch(
                "maps have different source or target".into(),
            ));
        }
        Ok(ModuleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.add(&other.matrix),
        })
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn kernel(&self) -> Subspace {
        self.matrix.kernel()
    }

    pub fn image(&self) -> Subspace {
        Subspace::full(self.source.field(), self.source.dim()).image(&self.matrix)
    }
}

/// `R`-linearity and operator compatibility of a candidate matrix, evaluated
/// column by column.
pub fn homomorphism_report(
    source: &RbModule,
    target: &RbModule,
    matrix: &Matrix,
) -> Result<AxiomReport> {
    source.require_same_base(target)?;
    if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
        return Err(Error::Dimension(format!(
            "map must be {}×{}",
            target.dim(),
            source.dim()
        )));
    }
    let mut report = AxiomReport::new("module homomorphism: R-linear and φ∘p = p'∘φ");
    let alg = source.algebra();
    for i in 0..alg.dim() {
        let lhs = matrix.mul(&source.action()[i]);
        let rhs = target.action()[i].mul(matrix);
        for j in 0..source.dim() {
            report.compare(
                || format!("{} acting on v{j}", alg.label(i)),
                lhs.column(j),
                rhs.column(j),
            );
        }
    }
    let lhs = matrix.mul(source.operator());
    let rhs = target.operator().mul(matrix);
    for j in 0..source.dim() {
        report.compare(|| format!("operator on v{j}"), lhs.column(j), rhs.column(j));
    }
    Ok(report)
}
