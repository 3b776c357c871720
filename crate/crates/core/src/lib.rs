//! Optimization-time analysis of the (1+1) evolutionary algorithm on the
//! OneMax and LeadingOnes fitness functions.
//!
//! The crate computes the distribution of the number of mutation steps until
//! the optimum three independent ways and cross-validates them:
//!
//! * exact recurrences in arbitrary-precision rational arithmetic
//!   ([`moments`], [`distributions`]),
//! * truncated asymptotic expansions built from the special functions of the
//!   underlying analysis ([`specfun`], [`asymptotics`]),
//! * seeded Monte Carlo simulation of the algorithm itself ([`simulator`]).
//!
//! Grid evaluations and replicate batches run on rayon when the `parallel`
//! feature (default) is enabled; [`exec::ExecMode::Sequential`] forces the
//! serial path, which produces bit-identical results.

pub mod asymptotics;
pub mod distributions;
pub mod error;
pub mod exactnum;
pub mod exec;
pub mod moments;
pub mod simulator;
pub mod specfun;
pub mod transition;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
