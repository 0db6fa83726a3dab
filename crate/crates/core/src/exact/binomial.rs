//! Binomial coefficients with rational upper argument and univariate
//! power-series helpers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::scalar::{big, Rational, Q};

/// `C(alpha, j) = alpha (alpha-1) ... (alpha-j+1) / j!`.
pub fn binom(alpha: &Rational, j: u64) -> Rational {
    let mut acc = Rational::one();
    for i in 0..j {
        acc *= alpha - Rational::from_integer(BigInt::from(i));
        acc /= Rational::from_integer(BigInt::from(i + 1));
    }
    acc
}

pub fn binom_q(alpha: Q, j: u64) -> Rational {
    binom(&big(alpha), j)
}

pub fn binom_i(n: i64, j: u64) -> Rational {
    binom(&Rational::from_integer(BigInt::from(n)), j)
}

/// Sign `(-1)^n`.
pub fn sign(n: i64) -> Rational {
    if n.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Truncated univariate power series `sum_{i<len} c_i t^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    pub coeffs: Vec<Rational>,
}

impl PowerSeries {
    pub fn new(mut coeffs: Vec<Rational>, len: usize) -> Self {
        coeffs.resize(len, Rational::zero());
        PowerSeries { coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.len().min(other.len());
        let mut out = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                out[i + j] += a * b;
            }
        }
        PowerSeries { coeffs: out }
    }

    /// `g^p` for a series with `g(0) = 1` and rational `p`, via the
    /// recurrence `n g0 h_n = sum_{j=1..n} ((p+1) j - n) g_j h_{n-j}`.
    pub fn pow(&self, p: &Rational) -> Self {
        assert!(self.coeffs.first().is_some_and(|c| c.is_one()), "pow needs unit constant term");
        let n = self.len();
        let mut h = vec![Rational::zero(); n];
        if n == 0 {
            return PowerSeries { coeffs: h };
        }
        h[0] = Rational::one();
        let p1 = p + Rational::one();
        for m in 1..n {
            let mut acc = Rational::zero();
            for j in 1..=m {
                let g = &self.coeffs[j];
                if g.is_zero() {
                    continue;
                }
                let w = &p1 * Rational::from_integer(BigInt::from(j)) - Rational::from_integer(BigInt::from(m));
                acc += w * g * &h[m - j];
            }
            h[m] = acc / Rational::from_integer(BigInt::from(m));
        }
        PowerSeries { coeffs: h }
    }
}
