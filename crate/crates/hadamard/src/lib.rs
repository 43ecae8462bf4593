//! Exact arithmetic in the ring of linear recurrence sequences.
//!
//! The crate provides the algebraic layers bottom-up: cyclotomic numbers,
//! radical roots and the scalar coefficient ring built on them, recurrence
//! sequences with their exponential-polynomial form, multiplicative lattices
//! of roots, Laurent-polynomial models of polynomial equations over the ring,
//! and finally the solver and the mod-q refuter that race each other.

pub mod arith;
pub mod cyclotomic;
pub mod lattice;
pub mod laurent;
pub mod obstruction;
pub mod radical;
pub(crate) mod ratpoly;
pub mod scalar;
pub mod sequences;
pub mod solver;
pub mod yroots;
