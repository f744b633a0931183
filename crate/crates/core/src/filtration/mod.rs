//! Bounded filtrations of free modules and rings: the Day tensor, shifts,
//! associated graded pieces, the Rees algebra over `Z[t]`, and the
//! deformation of `Int(Z)` by the basis `b_n(x,t)`.

pub mod drinfeld;
pub mod graded;
pub mod module;

pub use drinfeld::{drinfeld_poly, drinfeld_presentation, drinfeld_structure_constants};
pub use graded::{
    divided_power_presentation, rees_weight_rank, FilteredRing, GradedAlgebraPresentation,
};
pub use module::{swap_permutation, FilteredModule};
