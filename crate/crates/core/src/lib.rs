//! Telescoping (mediant-tree) evaluation of lattice-vector series.
//!
//! The sums range over unimodular pairs of first-quadrant vectors, over
//! half-plane pairs of fixed determinant, and over zero-sum triples of a
//! lattice `ℤz + ℤ`. Each is evaluated by direct summation over a truncated
//! index set; the quadrant sums also have an exact boundary formula obtained
//! by telescoping `F(x, y) = x·y / (|x|²|y|²)` over the mediant tree.

// `!(s > 1.0)` style guards also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod accumulate;
pub mod enumeration;
pub mod error;
pub mod lattice;
pub mod limits;
pub mod number_theory;
pub mod series;
pub mod verify;

pub use accumulate::Accumulator;
pub use enumeration::{
    coprime_pairs, detn_oracle, detn_pairs, lattice_hnf, sublattice_classes, tree_cut,
    triple_stream, unimodular_oracle, SublatticeClass, TreeCut, TruncationSpec,
};
pub use error::{Error, Result};
pub use lattice::{
    angle, defect, det, dot, f_kernel, norm, norm_sq, telescope_residual, LatticeVector, Real,
    VectorPair,
};
pub use series::{EvalOptions, LatticeShape, Method, SumResult};
