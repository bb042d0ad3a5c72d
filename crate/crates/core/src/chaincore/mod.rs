//! Graded integer chain complexes, Koszul-signed tensor calculus,
//! suspensions and integral homology.

mod complex;
pub mod homology;
pub mod json;
mod map;
mod matrix;
pub mod ops;
pub mod snf;

pub use complex::{integers_in_degree, interval_complex, ChainComplex, ComplexBuilder, Element, TruncationWindow};
pub use homology::{homology, is_quasi_iso, mapping_cone, AbelianGroup};
pub use map::GradedMap;
pub use matrix::{add_into, SparseMatrix};
pub use ops::{
    shift_label, shift_map, sign, susp_iso_l, susp_iso_m, suspend, tensor_complex, tensor_map, tensor_pairs, transpose,
    TensorIndex,
};
