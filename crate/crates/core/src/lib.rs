//! Lattice random walks on Z and Z² and the generating-function machinery
//! behind their recurrence.
//!
//! * [`walks`]: walk types, loop classification and the brute-force
//!   enumeration oracle.
//! * [`bijection`]: the correspondence between 2D walks and pairs of
//!   ±1 strings, under which loops are exactly the balanced pairs.
//! * [`series`]: exact truncated power series over big integers, including
//!   the loop ↔ first-return inversion `P = 1 - 1/B`.
//! * [`analysis`]: closed forms, weighted coefficients, return-probability
//!   partial sums and asymptotic checks.
//! * [`montecarlo`]: a reproducible parallel walker estimating the
//!   probability of returning within a step budget.
//! * [`output`]: record types shared by the command-line front end.

pub mod analysis;
pub mod bijection;
mod error;
pub mod montecarlo;
pub mod output;
pub mod series;
pub mod walks;

pub use error::{Error, Result};
pub use walks::{Dimension, Direction, LoopClass, Walk};
