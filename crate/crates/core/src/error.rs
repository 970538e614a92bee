use thiserror::Error;

use crate::model::parse::ParseError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FolError {
    #[error("forms live over different generator sets")]
    ModelMismatch,

    #[error("derivation has no image for generator `{0}`")]
    IncompleteDerivation(String),

    #[error("generator `{0}` has no declared conjugate")]
    MissingConjugate(String),

    #[error("expected a homogeneous form: {0}")]
    Purity(String),

    #[error("quotient requested but the denominator is not a subspace of the numerator")]
    NotASubspace,

    #[error("coefficient still depends on the parameter; evaluate first")]
    ParameterNotEvaluated,

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("invalid model: check `{check}` failed, witness {witness}")]
    InvalidModel { check: String, witness: String },

    #[error("model has no contraction table")]
    MissingFoliation,

    #[error("model is not bigraded: {0}")]
    NotBigraded(String),

    #[error("integrability failure on `{generator}`: forbidden component {witness}")]
    Integrability { generator: String, witness: String },

    #[error("model declares no metric and orientation")]
    MissingMetric,

    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T, E = FolError> = std::result::Result<T, E>;
