//! Exact-arithmetic construction of bicrossed product Hopf algebras
//! `F ▸◂ U(g1)` from matched pairs of Lie algebras, together with the
//! machinery needed to verify their algebraic identities and to compute
//! the relative Lie algebra cohomology groups they correspond to:
//!
//! * [`exactlin`] — rationals and sparse exact linear algebra,
//! * [`liealg`] — Lie algebras by structure constants and Chevalley-Eilenberg
//!   (co)homology,
//! * [`matched`] — matched pairs, the double crossed sum, PBW straightening
//!   and the factorization of `U(g1 ⋈ g2)`,
//! * [`hopf`] — finitely presented commutative Hopf algebras, Lie-Hopf data,
//!   the bicrossed product and its canonical modular pair in involution,
//! * [`coeff`] — induced modules and stable anti-Yetter-Drinfeld coefficients,
//! * [`cyclichom`] — the standard Hopf-cocyclic module, the bicocyclic module
//!   and the diagonal identification,
//! * [`reduced`] — the reduced (∂, b, B) bicomplexes, Poincaré duality and the
//!   dual bicomplex,
//! * [`vanest`] — the pairing with `U(g2)`, the van Est comparison map and
//!   relative cohomology tables.
//!
//! Everything is computed over ℚ with no floating point and no tolerances;
//! every identity check is an exact equality of normal forms.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod coeff;
pub mod cyclichom;
pub mod exactlin;
pub mod hopf;
pub mod liealg;
pub mod matched;
pub mod prng;
pub mod reduced;
pub mod report;
pub mod vanest;

pub use exactlin::Rat;
