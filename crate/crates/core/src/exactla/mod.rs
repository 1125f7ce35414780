//! Exact sparse linear algebra over Q, with a prime-field backend for
//! dimension counts.

mod echelon;
mod field;
#[cfg(test)]
pub(crate) mod oracle;
mod rational;
mod sparse;
mod subspace;

pub use echelon::{rank_of, Echelon, PivotLookup};
pub(crate) use echelon::{normalize, reduce_leading, work_from, Work};
pub use field::{Field, FieldTag, PrimeField, Rationals, DEFAULT_PRIME};
pub use rational::{ParseRationalError, Rational};
pub use sparse::{sparse_axpy, sparse_from_terms, sparse_scale, SparseMatrix, SparseVec};
pub use subspace::{
    annihilator, contains, intersect, kernel, rank, rank_cross_checked, rank_modular, PairingConvention, RankCheck,
    Subspace,
};
