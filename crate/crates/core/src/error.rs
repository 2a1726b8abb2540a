use thiserror::Error;

/// Errors produced while building grids, assembling and solving the
/// discrete systems, or evaluating solutions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid interval [{a}, {b}]: endpoints must be finite with a < b")]
    InvalidInterval { a: f64, b: f64 },

    #[error("point t = {t} is outside the open interval ({a}, {b})")]
    Domain { t: f64, a: f64, b: f64 },

    #[error("point t = {t} is outside the closed interval [{a}, {b}]")]
    OutOfInterval { t: f64, a: f64, b: f64 },

    #[error("transformed coordinate x = {x} overflows the double-exponential map")]
    Overflow { x: f64 },

    #[error("invalid regularity parameters: {0}")]
    InvalidParams(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is singular (zero pivot in column {column})")]
    Singular { column: usize },

    #[error("non-finite {what} at node {node}")]
    NonFinite { what: &'static str, node: i64 },

    #[error("evaluation failed at mesh point {index} (t = {t}): {reason}")]
    Evaluation {
        index: usize,
        t: f64,
        reason: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
