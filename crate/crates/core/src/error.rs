use thiserror::Error;

use crate::report::AxiomReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("scalars from different fields: {0} and {1}")]
    FieldMismatch(String, String),

    #[error("invalid field specification: {0}")]
    InvalidField(String),

    #[error("cannot parse scalar {0:?}")]
    ParseScalar(String),

    #[error("algebra is not {what}: {detail}")]
    NotAnAlgebra { what: &'static str, detail: String },

    #[error("not a module: {0}")]
    NotAModule(String),

    #[error("{what} failed with {} witness(es)", report.witnesses.len())]
    AxiomFailure { what: String, report: AxiomReport },

    #[error("module has not passed its Rota-Baxter axiom check")]
    Unverified,

    #[error("objects live over different algebras or sides: {0}")]
    Mismatch(String),

    #[error("subspace is not stable: {0}")]
    NotStable(String),

    #[error("not a module homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("generator {generator} does not map to a module constant: {detail}")]
    NotModuleConstant { generator: String, detail: String },

    #[error("operated tensor word would exceed the truncation bound {0}")]
    Truncation(usize),

    #[error("precondition refused: {0}")]
    Precondition(String),

    #[error("malformed word: {0}")]
    MalformedWord(String),

    #[error("unknown fixture: {0}")]
    UnknownFixture(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
