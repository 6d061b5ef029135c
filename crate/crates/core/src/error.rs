use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("point cloud is empty")]
    EmptyCloud,

    #[error("point {index} of the cloud is not finite")]
    NonFinitePoint { index: usize },

    #[error("overflow while evaluating {0}")]
    Overflow(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("symbol has a pole at z = {0}")]
    Pole(Complex64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("composition operator is unbounded: {0}")]
    UnboundedSymbol(String),

    #[error("symbol is not applicable on this space: {0}")]
    NotApplicable(String),

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("Hermitian eigensolver did not converge (off-diagonal residual {residual:e})")]
    EigenFailure { residual: f64 },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("evaluation failed at grid point z = {point}: {source}")]
    AtGridPoint {
        point: Complex64,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures of the numerics (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::Overflow(_)
            | Error::EigenFailure { .. }
            | Error::NonFinitePoint { .. }
            | Error::Pole(_) => true,
            Error::AtGridPoint { source, .. } => source.is_numerical(),
            _ => false,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
