//! Exact symbolic-dynamics invariants of m-modal interval maps and
//! two-dimensional triangular (skew-product) maps: kneading matrices and
//! determinants, Markov partitions and transition matrices, the homological
//! diagram matrices, and topological entropy — with the one-dimensional
//! invariants lifted to two dimensions through Kronecker and polynomial
//! tensor products.
//!
//! The numeric layer (orbit detection, fiber composition) feeds the exact
//! layer (integer polynomials, rational functions, 0/1 matrices); every
//! identity downstream of the symbol extraction is checked with exact
//! arithmetic. All values are immutable after construction and every
//! operation is a pure function of its inputs, so concurrent use needs no
//! synchronization.

pub mod algebra;
pub mod entropy;
pub mod error;
pub mod homology;
pub mod interval_map;
pub mod kneading;
pub mod markov;
pub mod pipeline;
pub mod symbols;

pub use error::{KneadError, Result};
