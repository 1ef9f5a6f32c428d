//! Exact rationals, the formal period ring, dense rational linear algebra and
//! a small high-precision complex type.
//!
//! `x` always stands for `2πi`.

mod bernoulli;
mod coef;
mod linalg;
mod numeric;
mod period;
mod rational;

pub use bernoulli::{bernoulli, bernoulli_table};
pub use coef::{solve_complex, Coef};
pub use linalg::{LinalgError, RationalMatrix};
pub use numeric::{pi, rationalize, two_pi_i, zeta_value, Complex, GUARD_BITS};
pub use period::{PeriodMonomial, PeriodScalar};
pub use rational::{binomial, factorial, format_rational, parse_rational, q};

pub use rug::{self, Float, Integer, Rational};
