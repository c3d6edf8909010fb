//! Exact computation with Euler forms on the numerical Grothendieck groups
//! of (non)commutative surfaces.
//!
//! The crate provides, in bottom-up order:
//!
//! - [`exactmat`]: dense arbitrary-precision integer and rational matrices
//!   (determinant, inverse, rank, nilpotency, characteristic polynomial);
//! - [`eulerform`]: Gram matrices of exceptional collections, the
//!   Coxeter/Serre matrices, and the surface-type axiom check;
//! - [`mutation`]: the signed braid group action on Gram matrices, word
//!   parsing, and relation verification;
//! - [`classify`]: bounded enumeration of surface-type matrices and orbit
//!   search (canonical forms, equivalence witnesses, the rank-4 report);
//! - [`ncalgebra`]: quadratic graded-algebra presentations, graded
//!   dimensions, fat-point multiplicity, and the named Gram matrices;
//! - [`geometry`]: divisor intersection numbers on the first Hirzebruch
//!   surface and the del Pezzo / fiber-type classification of orders.
//!
//! Every value is immutable after construction and every operation is a
//! pure function, so all types are safe to share across threads.

pub mod classify;
pub mod eulerform;
pub mod exactmat;
pub mod geometry;
pub mod mutation;
pub mod ncalgebra;

pub use eulerform::{GramMatrix, SerreReport, SURFACE_RANK};
pub use exactmat::{IntMatrix, RatMatrix};
pub use mutation::{apply_generator, apply_word, parse_word, BraidGenerator, BraidWord};
