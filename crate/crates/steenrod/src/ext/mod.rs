//! Ext over A(2) by minimal resolution, with an independent bar-complex oracle.



pub mod bar;
pub mod chart;
pub mod resolution;
pub mod towers;



pub use resolution::{minimal_resolution, Resolution, ResolutionStage, Resolver, Strategy};
pub use chart::{ext_dims, ChartFormat, ExtChart};
