//! Exact-arithmetic lattice computations.
//!
//! Everything in this crate runs over arbitrary-precision rationals: Gram
//! matrices, determinants, duals, sections and projections of scaled
//! lattices, short-vector enumeration, and the antipodal translate-packing
//! construction together with its center-density algebra. Floating point is
//! used only to prune the enumeration tree; every reported vector is
//! recertified exactly.

pub mod antipode;
pub mod codes;
pub mod constructions;
pub mod enumeration;
pub mod error;
pub mod hnf;
pub mod lattice;
pub mod ldl;
pub mod lll;
pub mod matrix;
pub mod rat;
pub mod solve;

pub use error::{Error, Result};
pub use lattice::{ScaledLattice, Side, Splitting};
pub use matrix::RatMatrix;
pub use rat::Rat;
