//! Bar and cobar complexes of small bigraded (co)algebras over `Z`, with
//! homology computed exactly through the Smith normal form.

pub mod algebra;
pub mod bar;
pub mod complex;

pub use algebra::{Generator, GradedAugmentedAlgebra, GradedCoalgebra};
pub use bar::{
    bar_complex, cobar_complex, cobar_is_transpose_of_bar, concatenation_product, shuffle_product,
    HomologyRow, WordComplex,
};
pub use complex::{Bidegree, ChainComplex, HomologyClass, HomologyGroup};
