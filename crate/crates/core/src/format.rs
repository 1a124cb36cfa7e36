//! JSON formats for algebras and modules.
//!
//! Scalars are written as strings `"p/q"` over ℚ and as integer residues
//! over `F_p`; on input either form is accepted and resolved against the
//! session's field.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, AlgebraPresentation};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, RawScalar, Vector};
use crate::rbmod::{RbModule, Side};

/// Version of every JSON report this crate emits.
pub const SCHEMA_VERSION: u32 = 1;

type RawVector = Vec<RawScalar>;
type RawMatrix = Vec<RawVector>;

/// `structure_constants[i][j]` holds the coordinates of `eᵢ·eⱼ`; matrices
/// are lists of rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub dim: usize,
    pub labels: Vec<String>,
    pub structure_constants: Vec<Vec<RawVector>>,
    pub unit: RawVector,
    pub lambda: RawScalar,
    pub operator: RawMatrix,
}

/// `action[i]` is the matrix of `eᵢ` acting on the module; `algebra_ref`
/// names a bundled algebra or an algebra file relative to this one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub algebra_ref: String,
    pub side: Side,
    pub dim: usize,
    pub action: Vec<RawMatrix>,
    pub operator: RawMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Document {
    Algebra(AlgebraFile),
    Module(ModuleFile),
}

impl Document {
    pub fn parse(text: &str) -> Result<Document> {
        Ok(serde_json::from_str(text)?)
    }
}

fn raw_vector(v: &[crate::linalg::Scalar]) -> RawVector {
    v.iter().map(RawScalar::from).collect()
}

fn raw_matrix(m: &Matrix) -> RawMatrix {
    (0..m.rows()).map(|r| raw_vector(m.row(r))).collect()
}

fn resolve_vector(field: Field, v: &[RawScalar], len: usize, what: &str) -> Result<Vector> {
    if v.len() != len {
        return Err(Error::Dimension(format!(
            "{what} must have {len} entries, found {}",
            v.len()
        )));
    }
    v.iter().map(|x| x.resolve(field)).collect()
}

fn resolve_matrix(field: Field, m: &[RawVector], n: usize, what: &str) -> Result<Matrix> {
    if m.len() != n {
        return Err(Error::Dimension(format!(
            "{what} must have {n} rows, found {}",
            m.len()
        )));
    }
    let rows = m
        .iter()
        .enumerate()
        .map(|(r, row)| resolve_vector(field, row, n, &format!("row {r} of {what}")))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(field, rows)
}

impl AlgebraFile {
    pub fn from_presentation(a: &AlgebraPresentation) -> AlgebraFile {
        let alg = a.algebra();
        AlgebraFile {
            dim: a.dim(),
            labels: alg.labels().to_vec(),
            structure_constants: alg
                .structure_constants()
                .iter()
                .map(|row| row.iter().map(|v| raw_vector(v)).collect())
                .collect(),
            unit: raw_vector(alg.unit()),
            lambda: RawScalar::from(a.weight()),
            operator: raw_matrix(a.operator()),
        }
    }

    /// Builds the presentation; associativity and the unit are checked, the
    /// Rota-Baxter identity is not.
    pub fn to_presentation(&self, field: Field) -> Result<AlgebraPresentation> {
        let d = self.dim;
        if self.labels.len() != d {
            return Err(Error::Dimension(format!(
                "expected {d} labels, found {}",
                self.labels.len()
            )));
        }
        if self.structure_constants.len() != d {
            return Err(Error::Dimension(format!(
                "structure_constants must have {d} rows"
            )));
        }
        let constants = self
            .structure_constants
            .iter()
            .enumerate()
            .map(|(i, row)| {
                if row.len() != d {
                    return Err(Error::Dimension(format!(
                        "structure_constants[{i}] must have {d} entries"
                    )));
                }
                row.iter()
                    .enumerate()
                    .map(|(j, v)| {
                        resolve_vector(field, v, d, &format!("structure_constants[{i}][{j}]"))
                    })
                    .collect()
            })
            .collect::<Result<Vec<_>>>()?;
        let unit = resolve_vector(field, &self.unit, d, "unit")?;
        let algebra = Algebra::new(field, self.labels.clone(), constants, unit)?;
        let operator = resolve_matrix(field, &self.operator, d, "operator")?;
        AlgebraPresentation::new(algebra, self.lambda.resolve(field)?, operator)
    }
}

impl ModuleFile {
    pub fn from_module(m: &RbModule, algebra_ref: impl Into<String>) -> ModuleFile {
        ModuleFile {
            algebra_ref: algebra_ref.into(),
            side: m.side(),
            dim: m.dim(),
            action: m.action().iter().map(raw_matrix).collect(),
            operator: raw_matrix(m.operator()),
        }
    }

    /// Builds the module over an already resolved algebra; the module axioms
    /// are checked, the Rota-Baxter identity is not.
    pub fn to_module(&self, algebra: Arc<AlgebraPresentation>) -> Result<RbModule> {
        let field = algebra.field();
        if self.action.len() != algebra.dim() {
            return Err(Error::Dimension(format!(
                "expected {} action matrices, found {}",
                algebra.dim(),
                self.action.len()
            )));
        }
        let action = self
            .action
            .iter()
            .enumerate()
            .map(|(i, a)| resolve_matrix(field, a, self.dim, &format!("action[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        let operator = resolve_matrix(field, &self.operator, self.dim, "operator")?;
        RbModule::new(algebra, self.side, action, operator)
    }
}
