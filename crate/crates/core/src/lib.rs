//! Exact-arithmetic symmetric-polynomial library and identity-check engine.
//!
//! The building blocks are integer partitions ([`partition`]), sparse
//! multivariate polynomials over exact rationals ([`poly`]), the classical
//! bases with Kostka/inverse-Kostka tables and Littlewood-Richardson
//! coefficients ([`bases`], [`kostka`]), and the q_r generating family with
//! 2-reduced Schur polynomials and Pfaffian-defined Schur Q-functions
//! ([`qseries`]). On top of those, [`engine`] evaluates a family of exact
//! polynomial identities relating these objects and reports each instance as
//! pass, fail, or report-only (for the open cases swept at instance size 3).
//!
//! Everything is computed over arbitrary-precision rationals; a check passes
//! only when the difference of the two sides is the zero polynomial.

pub mod bases;
pub mod ctx;
pub mod engine;
pub mod kostka;
pub mod partition;
pub mod poly;
pub mod qseries;

pub use ctx::Ctx;
pub use partition::{IndexSeq, Partition};
pub use poly::{ExactPoly, Grading, Rat, VarSpace};
