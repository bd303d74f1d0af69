//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("not a basis: rows are linearly dependent")]
    NotABasis,
    #[error("not positive definite")]
    NotPositiveDefinite,
    #[error("degenerate splitting: section of rank {found} where {expected} required")]
    DegenerateSplitting { expected: usize, found: usize },
    #[error("not in projection lattice")]
    NotInProjectionLattice,
    #[error("enumeration cap exceeded (cap {cap})")]
    EnumerationCapExceeded { cap: u64 },
    #[error("infeasible at this cap")]
    InfeasibleCap,
    #[error("spheres vanish: diameter bound is not below the minimal norm")]
    SpheresVanish,
    #[error("vector list absent from report (run with list = true)")]
    ListAbsent,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
