use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Serialize, Serializer};

use super::scalar::Q;

/// A rational exponent of a formal variable.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Exponent(pub Q);

impl Exponent {
    pub fn int(n: i64) -> Self {
        Exponent(Q::from_integer(n))
    }

    pub fn new(n: i64, d: i64) -> Self {
        Exponent(Q::new(n, d))
    }

    pub fn value(self) -> Q {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0.is_integer()
    }

    /// Whether the exponent lies in `(1/t) Z`.
    pub fn fits(self, t: i64) -> bool {
        t % *self.0.denom() == 0
    }

    pub fn to_integer(self) -> Option<i64> {
        self.0.is_integer().then(|| self.0.to_integer())
    }
}

impl From<Q> for Exponent {
    fn from(q: Q) -> Self {
        Exponent(q)
    }
}

impl From<i64> for Exponent {
    fn from(n: i64) -> Self {
        Exponent::int(n)
    }
}

impl Add for Exponent {
    type Output = Exponent;
    fn add(self, rhs: Self) -> Self {
        Exponent(self.0 + rhs.0)
    }
}

impl Sub for Exponent {
    type Output = Exponent;
    fn sub(self, rhs: Self) -> Self {
        Exponent(self.0 - rhs.0)
    }
}

impl Neg for Exponent {
    type Output = Exponent;
    fn neg(self) -> Self {
        Exponent(-self.0)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

/// Least common multiple of the denominators of a set of exponents.
pub fn denom_bound<I: IntoIterator<Item = Exponent>>(it: I) -> i64 {
    it.into_iter().fold(1i64, |acc, e| num_integer::lcm(acc, *e.0.denom()))
}
