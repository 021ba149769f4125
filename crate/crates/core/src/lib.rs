//! Exact arithmetic for the composed families `f1(x^k + b)` and `f2(x^k + b)`:
//! discriminants, Dedekind index tests, fast per-prime case checks, and an
//! empirical census of monogenic pairs.
//!
//! Module map:
//!
//! - [`zx`]: dense polynomials over the integers, resultants, discriminants.
//! - [`fp`]: polynomials over prime fields and their complete factorization.
//! - [`intarith`]: valuations, radicals, bounded factoring, squarefreeness.
//! - [`dedekind`]: the Dedekind criterion, used as ground truth.
//! - [`families`]: the two families, closed forms, case checks, pipeline.
//! - [`analytic`]: the auxiliary polynomial `G`, root counts mod `p^2`,
//!   the conditional density bound and the census.

pub mod analytic;
pub mod dedekind;
mod decimal;
mod error;
pub mod families;
pub mod fp;
pub mod intarith;
pub mod zx;

pub use error::{Error, Result};
pub use zx::IntPoly;
