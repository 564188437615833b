use thiserror::Error;

use crate::numerics::LpStatus;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape mismatch: expected {expected}, got {found}")]
    ShapeMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("non-finite entry in input")]
    NonFinite,

    #[error("power iteration did not converge within {0} iterations")]
    PowerIterationCap(usize),

    #[error("linear program finished with status {0:?}")]
    LpNotOptimal(LpStatus),

    #[error("invalid filtered algebra: {0}")]
    InvalidAlgebra(String),

    #[error("level {level} out of range 1..={max}")]
    LevelOutOfRange { level: usize, max: usize },

    #[error("element is not self-adjoint")]
    NotSelfAdjoint,

    #[error("invalid beta sequence: {0}")]
    InvalidBeta(String),

    #[error("residual {residual:e} at level {level} is zero; the element lies in that level")]
    ZeroResidual { level: usize, residual: f64 },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("unknown point {0:?}")]
    UnknownPoint(String),

    #[error("mk distances are not available on matrix algebras")]
    MatrixKindUnsupported,

    #[error("states disagree on level {level} (deviation {deviation:e})")]
    AgreementViolated { level: usize, deviation: f64 },

    #[error("witness seminorm {observed} does not match 1/beta(n) = {expected}")]
    WitnessMismatch { expected: f64, observed: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
