use steenrod::SteenrodError;
use thiserror::Error;

use crate::decomposition::SummandKind;
use crate::ring::RingId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("y-term supplied to the y-free ring {0}")]
    YInYFreeRing(RingId),

    #[error("ring mismatch: {left} and {right}")]
    RingMismatch { left: RingId, right: RingId },

    #[error("nonpositive multiplicity {coeff} for {monomial}")]
    NegativeMultiplicity { monomial: String, coeff: String },

    #[error("{0} summands have no g-local homotopy series")]
    UnsupportedKind(SummandKind),

    #[error("census enumeration needs {needed} index sets, budget is {limit}")]
    WindowTooLarge { needed: usize, limit: usize },

    #[error(transparent)]
    Steenrod(#[from] SteenrodError),
}

impl Error {
    /// Stable machine-readable error code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "PARSE_ERROR",
            Error::YInYFreeRing(_) => "Y_IN_Y_FREE_RING",
            Error::RingMismatch { .. } => "RING_MISMATCH",
            Error::NegativeMultiplicity { .. } => "NEGATIVE_MULTIPLICITY",
            Error::UnsupportedKind(_) => "UNSUPPORTED_KIND",
            Error::WindowTooLarge { .. } => "WINDOW_TOO_LARGE",
            Error::Steenrod(e) => e.code(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
