use thiserror::Error;

use crate::milnor::MargolisOp;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SteenrodError {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("degree mismatch on line {line}: Sq^{op} of generator {source_gen} (degree {source_degree}) hits generator {target} of degree {target_degree}")]
    DegreeMismatch {
        line: usize,
        op: u32,
        source_gen: usize,
        source_degree: i32,
        target: usize,
        target_degree: i32,
    },

    #[error("{op} does not square to zero on this module")]
    NotExterior { op: MargolisOp },

    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    BudgetExceeded {
        what: String,
        needed: usize,
        limit: usize,
    },

    #[error("window too small: {0}")]
    WindowTooSmall(String),

    #[error("unknown module `{0}`")]
    UnknownModule(String),
}

impl SteenrodError {
    /// Stable machine-readable error code.
    pub fn code(&self) -> &'static str {
        match self {
            SteenrodError::Parse { .. } => "PARSE_ERROR",
            SteenrodError::DegreeMismatch { .. } => "DEGREE_MISMATCH",
            SteenrodError::NotExterior { .. } => "NOT_EXTERIOR",
            SteenrodError::BudgetExceeded { .. } => "BUDGET_EXCEEDED",
            SteenrodError::WindowTooSmall(_) => "WINDOW_TOO_SMALL",
            SteenrodError::UnknownModule(_) => "UNKNOWN_MODULE",
        }
    }
}

pub type Result<T> = std::result::Result<T, SteenrodError>;
