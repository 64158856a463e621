//! Exact rational scalars and sparse linear algebra.
//!
//! Everything downstream (cohomology dimensions, invariant subspaces,
//! quotient bases) reduces to [`rank_kernel`], [`membership`] and
//! [`quotient_dimension`] over ℚ. Elimination is plain fraction
//! arithmetic with a size-based pivot preference; no modular shortcuts.

mod matrix;
mod rational;

pub use matrix::{
    membership, quotient_dimension, rank_kernel, solve, vec_add_scaled, vec_scale, vec_set,
    LinError, SparseMatrix, SparseVec, SubspaceBasis,
};
pub use rational::{parse_rat, rat, rat_to_string, Rat};
