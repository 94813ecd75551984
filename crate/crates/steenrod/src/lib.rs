//! Finite sub-Hopf algebras of the mod 2 Steenrod algebra, modules over them,
//! and minimal resolutions computing Ext over A(2).

pub mod gf2;
pub mod error;
pub mod group_ring;
pub mod hom;
pub mod margolis;
pub mod milnor;
pub mod module;
pub mod standard;
pub mod ext;

pub use error::{Result, SteenrodError};
pub use milnor::{a1, a2, AlgebraElement, MargolisOp, MilnorElement};
pub use module::SteenrodModule;
pub use standard::{build_standard, StandardModule};
