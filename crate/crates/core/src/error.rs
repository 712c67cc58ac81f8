use thiserror::Error;

use crate::algebra::Context;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("scalar context mismatch: expected {expected}, found {found}")]
    ContextMismatch { expected: Context, found: Context },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("arity mismatch: expected {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("characteristic {0} is not supported here (need p not dividing 6)")]
    UnsupportedCharacteristic(u64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("polynomial is not homogeneous: {0}")]
    NonHomogeneous(String),

    #[error("elimination needs at least one variable to keep")]
    EmptyKeepSet,

    #[error("invalid scroll type: {0}")]
    InvalidSpec(String),

    #[error("invalid projection: {0}")]
    InvalidProjection(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("duplicate ruling parameter {0}")]
    DuplicateParameter(String),

    #[error("value out of range: {0}")]
    Domain(String),

    #[error("plan infeasible: {0}")]
    PlanInfeasible(String),

    #[error("search failed in stage `{stage}`: {detail}")]
    SearchFailed { stage: String, detail: String },

    #[error("bad reduction modulo {prime}: {detail}")]
    BadReduction { prime: u32, detail: String },

    #[error("rows of the line matrix are linearly dependent")]
    DependentRows,

    #[error("the zero form has no hypersurface")]
    ZeroForm,

    #[error("cubic does not contain the scroll: equation {equation} has nonzero term {monomial}")]
    NotContained { equation: usize, monomial: String },

    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
