//! Nonstandard domestic Brauer graph algebras Ω(T) for one-loop Brauer
//! graphs: exact quotient algebras, complexes of projectives up to homotopy,
//! the shrinking and enlarging tilting complexes, and the reduction of any
//! one-loop graph to the loop-star normal form Ω(n) with per-step
//! certificates.

pub mod algebra;
pub mod error;
pub mod field;
pub mod graph;
pub mod homological;
pub mod linalg;
pub mod quiver;
pub mod reduction;
pub mod tilting;

pub use error::{Error, Result};
pub use field::{Field, Fp, Rational};
