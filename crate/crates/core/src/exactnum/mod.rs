//! Exact arithmetic substrate: big rationals, dense polynomials and rational
//! functions in one symbol, truncated power series, and Laurent expansion of
//! a rational function at infinity.

mod linalg;
mod poly;
mod ratfun;
mod rational;
mod series;

pub use linalg::{nullspace_vector, solve_linear};
pub use poly::Poly;
pub use ratfun::RationalFunction;
pub use rational::{checked_div, parse_rational, rat, rat_i, rational_to_f64, Rational};
pub use series::{Coeff, TruncatedSeries};
