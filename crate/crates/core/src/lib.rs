//! Exact arithmetic in the rings `R`, `R'`, `R/(y)`, bo-Brown-Gitler polynomials,
//! and the v2-local and g-local decompositions they encode.

pub mod brown_gitler;
pub mod cli;
pub mod decomposition;
pub mod error;
pub mod glocal;
pub mod ring;
pub mod tables;
pub mod verify;

pub use error::{Error, Result};
pub use ring::{normalize, parse_expression, Gen, Monomial, RawExpression, RingElement, RingId};
pub use steenrod;
