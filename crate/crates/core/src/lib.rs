//! Exact continuants, bounded continued fractions, and the counting of
//! sequences whose continuant is a prime power.
//!
//! * [`continuant`]: exact continuant and continued-fraction arithmetic.
//! * [`census`]: exhaustive enumeration of bounded sequences with a given
//!   continuant.
//! * [`construction`]: doubling constructions that build many such
//!   sequences from a few seeds.
//! * [`bounds`]: the growth recurrence, its transfer matrices, and explicit
//!   lower and upper bounds compared against the census.

pub mod bounds;
pub mod census;
pub mod cli;
pub mod construction;
pub mod continuant;
pub mod error;
pub mod report;
pub mod verify;

pub use continuant::{Fraction, Natural, PartialQuotients};
pub use error::{Error, Result};
