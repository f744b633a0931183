//! Exact computations around the Hopf algebra of integer-valued
//! polynomials: the binomial basis and its degree filtration, truncated
//! Witt vectors with Frobenius operators, the Rees deformation, the
//! pairing with `Z[[u]]`, and bar/cobar homology of small graded algebras.
//!
//! Everything is exact; no floating point is used anywhere.

pub mod arith;
pub mod error;
pub mod filtration;
pub mod homology;
pub mod intz;
pub mod json;
pub mod linalg;
pub mod witt;

pub use error::{Error, Result};
