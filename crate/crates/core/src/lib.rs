//! Exact verification of Frobenius manifolds, F-manifolds, F-algebroids and
//! Lie algebroids given by polynomial data, together with the almost-duality
//! map between a Frobenius structure and its dual as a composition of two
//! anchor maps of the cotangent F-algebroid.
//!
//! Everything is computed over the rationals. Identities are checked as exact
//! polynomial (or rational-function) identities, or exactly at rational points
//! when the statement is pointwise.

pub mod algebroid;
pub mod check;
pub mod duality;
pub mod error;
pub mod fiber_algebra;
pub mod frobenius;
pub mod linalg;
pub mod poly;
pub mod sampling;

pub use check::{CheckReport, Witness};
pub use error::{Error, Result};
pub use poly::{DiffRing, MultiPoly, Rational, RationalFunction, RationalPoint};
