use thiserror::Error;

/// Everything that can go wrong in the library.
///
/// Validation errors carry the residual that tripped them so callers can
/// report how far off an input was.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix has non-finite entries")]
    NotFinite,

    #[error("matrix is not Hermitian: |A - A^dag|_HS = {residual:e}")]
    NotHermitian { residual: f64 },

    #[error("trace is not one: |tr(rho) - 1| = {residual:e}")]
    TraceNotOne { residual: f64 },

    #[error("matrix is not positive semidefinite: smallest eigenvalue {min_eigenvalue:e}")]
    NotPsd { min_eigenvalue: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("purity tr(rho^2) = {purity:e} is too small to normalize")]
    DegenerateState { purity: f64 },

    #[error("bound is degenerate: nonzero change {delta:e} with zero speed")]
    DegenerateBound { delta: f64 },

    #[error("step too large: state left the PSD cone by {violation:e} at t = {time}")]
    StepTooLarge { time: f64, violation: f64 },

    #[error("cumulative hermiticity/trace correction {total:e} exceeds budget {budget:e}")]
    CorrectionBudgetExceeded { total: f64, budget: f64 },

    #[error("generator is time dependent")]
    TimeDependentGenerator,

    #[error("generator has no linear superoperator representation")]
    NotLinear,

    #[error("fidelity target {0} is outside [0, 1]")]
    InvalidFidelity(f64),

    #[error("negative rate {value} at t = {time} without allow_negative")]
    NegativeRate { time: f64, value: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal consistency violated: {0}")]
    Internal(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    /// Stable name of the variant, used by the CLI on stderr.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotSquare { .. } => "NotSquare",
            Error::NotFinite => "NotFinite",
            Error::NotHermitian { .. } => "NotHermitian",
            Error::TraceNotOne { .. } => "TraceNotOne",
            Error::NotPsd { .. } => "NotPSD",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::DegenerateState { .. } => "DegenerateState",
            Error::DegenerateBound { .. } => "DegenerateBound",
            Error::StepTooLarge { .. } => "StepTooLarge",
            Error::CorrectionBudgetExceeded { .. } => "CorrectionBudgetExceeded",
            Error::TimeDependentGenerator => "TimeDependentGenerator",
            Error::NotLinear => "NotLinear",
            Error::InvalidFidelity(_) => "InvalidFidelity",
            Error::NegativeRate { .. } => "NegativeRate",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::Internal(_) => "Internal",
            Error::Parse(_) => "Parse",
        }
    }

    /// Input problems, as opposed to numerical failures during a computation.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::NotSquare { .. }
                | Error::NotFinite
                | Error::NotHermitian { .. }
                | Error::TraceNotOne { .. }
                | Error::NotPsd { .. }
                | Error::DimensionMismatch { .. }
                | Error::TimeDependentGenerator
                | Error::NotLinear
                | Error::InvalidFidelity(_)
                | Error::NegativeRate { .. }
                | Error::InvalidArgument(_)
                | Error::Parse(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
