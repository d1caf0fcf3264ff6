//! Computational toolkit for squarefull (powerful) numbers in short
//! intervals: exact enumeration and counting, the Bateman-Grosswald
//! approximation, exact evaluation of the short-interval variance by event
//! sweep, the diagonal sinc sums and their limiting constant, and
//! desk-scale checks of the lattice-point counting bounds behind the
//! medium-interval estimates.

pub mod analytic;
pub mod diagonal;
pub mod error;
pub mod int;
pub mod lattice;
pub mod quad;
pub mod rational;
pub mod rng;
pub mod sieve;
pub mod smooth;
pub mod sum;
pub mod variance;

pub use analytic::ZetaConstants;
pub use error::{Error, Result};
pub use rational::Rational;
pub use sieve::{build_sieve, SieveTable, SquarefullRep};
