//! Exact computations with Rota-Baxter algebras and their modules.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod freemod;
pub mod linalg;
pub mod opring;
pub mod rbmod;
pub mod report;
pub mod tensorflat;
pub mod verify;

pub use algebra::{Algebra, AlgebraPresentation};
pub use error::{Error, Result};
pub use linalg::{Field, Matrix, Scalar, Subspace, Vector};
pub use rbmod::{Bimodule, ModuleMap, RbModule, Side};
pub use report::AxiomReport;
