use thiserror::Error;

/// Errors raised by the exact linear algebra and geometry layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("invalid flag: {0}")]
    InvalidFlag(String),
    #[error("invalid grading: {0}")]
    InvalidGrading(String),
    #[error("invalid flag type: {0}")]
    InvalidType(String),
    #[error("flags are not transversal")]
    NotTransversal,
    #[error("{value} is not invertible in characteristic {characteristic}")]
    NotInvertible { value: u64, characteristic: u64 },
    #[error("operator is not nilpotent/unipotent with respect to the flag")]
    NotAdapted,
    #[error("point is not in the chart domain")]
    NotInChart,
    #[error("subset is not intrinsic: {0}")]
    NotIntrinsic(String),
    #[error("budget exceeded: need {needed}, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("operator is not diagonalizable over the declared eigenvalues")]
    NotDiagonalizable,
    #[error("eigenvalues {0} and {1} coincide in characteristic {2}")]
    EigenvalueCollision(i64, i64, u64),
    #[error("not an idempotent")]
    NotIdempotent,
    #[error("not an inner ideal")]
    NotInnerIdeal,
    #[error("inner ideal is not of the form I_(E,F)")]
    Nonstandard,
    #[error("bilinear form: {0}")]
    Form(String),
    #[error("not quasi-invertible")]
    NotQuasiInvertible,
    #[error("singular matrix")]
    Singular,
    #[error("no solution")]
    NoSolution,
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;
