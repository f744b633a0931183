//! Truncated big and p-typical Witt vectors over commutative rings.
//!
//! Ring operations evaluate universal integer polynomials, generated once
//! per truncation set by the ghost-component method and cached. Evaluation
//! happens directly in the coefficient ring, so torsion rings need no lifts.

pub mod kernel;
pub mod ring;
pub mod trunc;
pub mod universal;
pub mod vector;

pub use kernel::{kernel_enumerate, KernelOptions};
pub use ring::{CoeffRing, FiniteField, RingElem};
pub use trunc::TruncationSet;
pub use universal::{universal_poly, OpTag, UniversalCache, UniversalFamily};
pub use vector::{
    frobenius_congruence, teichmuller, twisted_frobenius, FrobeniusModel, WittVector,
};
