//! Exact scalars, exponents and truncated formal series.

pub mod binomial;
pub mod exponent;
pub mod scalar;
pub mod series;

pub use binomial::{binom, binom_i, binom_q, sign, PowerSeries};
pub use exponent::Exponent;
pub use scalar::{big, q, rat, Rational, Scalar, Q};
pub use series::{delta_series, expand_binomial, expand_sum_power, substitute_root, substitute_var, Coeff, PuiseuxSeries};
