//! Exact arithmetic in the cyclotomic fields Q(eta_N).
//!
//! A [`Scalar`] stores the coefficients of a polynomial in `eta_N` reduced
//! modulo the N-th cyclotomic polynomial. Operands of different orders are
//! lifted to the lcm of their orders before combining.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};

pub type Rational = BigRational;

/// Small exact rationals used for charges, weights and exponents.
pub type Q = Ratio<i64>;

pub fn big(q: Q) -> Rational {
    Rational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

fn cyclotomic_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients (lowest degree first) of the N-th cyclotomic polynomial.
pub fn cyclotomic_poly(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic order must be positive");
    if let Some(p) = cyclotomic_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every Phi_d with d | n, d < n.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let div = cyclotomic_poly(d);
            num = exact_monic_div(&num, &div);
        }
    }
    let p = Arc::new(num);
    cyclotomic_cache().lock().unwrap().insert(n, p.clone());
    p
}

fn exact_monic_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quo = vec![0i64; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd];
        quo[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quo
}

pub fn euler_phi(n: u32) -> usize {
    cyclotomic_poly(n).len() - 1
}

/// Element of Q(eta_N).
#[derive(Clone)]
pub struct Scalar {
    order: u32,
    coeffs: Vec<Rational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        Scalar { order: 1, coeffs: vec![r] }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_q(x: Q) -> Self {
        Self::from_rational(big(x))
    }

    /// `eta_n^e` for the principal primitive n-th root of unity.
    pub fn root_of_unity(n: u32, e: i64) -> Self {
        let e = e.rem_euclid(n as i64) as usize;
        let mut poly = vec![Rational::zero(); e + 1];
        poly[e] = Rational::one();
        Self::reduce(n, poly)
    }

    /// `exp(2 pi i t)` for rational `t`.
    pub fn exp_2pi_i(t: Q) -> Self {
        let t = t - t.floor();
        Self::root_of_unity(*t.denom() as u32, *t.numer())
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    fn reduce(order: u32, mut poly: Vec<Rational>) -> Self {
        let phi = cyclotomic_poly(order);
        let d = phi.len() - 1;
        while poly.len() > d {
            let c = poly.pop().unwrap();
            if c.is_zero() {
                continue;
            }
            let shift = poly.len() - d;
            for (j, &pj) in phi.iter().take(d).enumerate() {
                if pj != 0 {
                    poly[shift + j] -= &c * Rational::from_integer(BigInt::from(pj));
                }
            }
        }
        poly.resize(d, Rational::zero());
        Scalar { order, coeffs: poly }
    }

    /// Re-express in Q(eta_n); `n` must be a multiple of the current order.
    pub fn lift(&self, n: u32) -> Self {
        if n == self.order {
            return self.clone();
        }
        assert!(n % self.order == 0, "cannot embed Q(eta_{}) in Q(eta_{})", self.order, n);
        let step = (n / self.order) as usize;
        let mut poly = vec![Rational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Self::reduce(n, poly)
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.order == b.order {
            return (a.clone(), b.clone());
        }
        let n = a.order.lcm(&b.order);
        (a.lift(n), b.lift(n))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// `Some(r)` when the value lies in Q; the powers of eta below phi(N)
    /// form a basis, so a rational value has a constant representative.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(|x| x.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        out
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero scalar");
        if self.order == 1 || self.coeffs[1..].iter().all(|c| c.is_zero()) {
            let mut out = Scalar { order: self.order, coeffs: vec![Rational::zero(); self.coeffs.len()] };
            out.coeffs[0] = self.coeffs[0].recip();
            return out;
        }
        // Extended Euclid in Q[x]: s*a + t*Phi = 1.
        let phi: Vec<Rational> = cyclotomic_poly(self.order)
            .iter()
            .map(|&c| Rational::from_integer(BigInt::from(c)))
            .collect();
        let (g, s) = poly_ext_gcd(trim(self.coeffs.clone()), phi);
        debug_assert_eq!(g.len(), 1);
        let g0 = g[0].clone();
        let s: Vec<Rational> = s.into_iter().map(|c| c / &g0).collect();
        Self::reduce(self.order, s)
    }

    pub fn pow(&self, e: i64) -> Self {
        let mut base = if e < 0 { self.inv() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if rem.len() <= db {
        return (vec![Rational::zero()], rem);
    }
    let lead = b[db].clone();
    let mut quo = vec![Rational::zero(); rem.len() - db];
    for i in (0..quo.len()).rev() {
        let c = &rem[i + db] / &lead;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                rem[i + j] -= &c * bj;
            }
        }
        quo[i] = c;
    }
    rem.truncate(db.max(1));
    (trim(quo), trim(rem))
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    trim(out)
}

// Returns (g, s) with s*a == g (mod b).
fn poly_ext_gcd(a: Vec<Rational>, b: Vec<Rational>) -> (Vec<Rational>, Vec<Rational>) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (vec![Rational::one()], vec![Rational::zero()]);
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (quo, rem) = poly_divrem(&r0, &r1);
        let s2 = poly_sub(&s0, &Scalar::poly_mul(&quo, &s1));
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s2);
    }
    (r0, s0)
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Scalar::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Scalar {}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

impl From<Q> for Scalar {
    fn from(r: Q) -> Self {
        Scalar::from_q(r)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.order == rhs.order {
            let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
            return Scalar { order: self.order, coeffs };
        }
        let (a, b) = Scalar::common(self, rhs);
        &a + &b
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        if self.order == rhs.order {
            let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
            return Scalar { order: self.order, coeffs };
        }
        let (a, b) = Scalar::common(self, rhs);
        &a - &b
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.order == 1 {
            let c = &self.coeffs[0];
            return Scalar { order: rhs.order, coeffs: rhs.coeffs.iter().map(|x| x * c).collect() };
        }
        if rhs.order == 1 {
            let c = &rhs.coeffs[0];
            return Scalar { order: self.order, coeffs: self.coeffs.iter().map(|x| x * c).collect() };
        }
        if self.order != rhs.order {
            let (a, b) = Scalar::common(self, rhs);
            return &a * &b;
        }
        Scalar::reduce(self.order, Scalar::poly_mul(&self.coeffs, &rhs.coeffs))
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if self.order == rhs.order {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a += b;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if self.order == rhs.order {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a -= b;
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = if c.is_integer() { c.numer().to_string() } else { c.to_string() };
            terms.push(match i {
                0 => c,
                1 => format!("({c})*e{}", self.order),
                _ => format!("({c})*e{}^{i}", self.order),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(*cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(30), 8);
    }

    #[test]
    fn roots_of_unity() {
        for n in 1..13u32 {
            let eta = Scalar::root_of_unity(n, 1);
            assert!(eta.pow(n as i64).is_one(), "eta_{n}^{n}");
            let s = (0..n as i64).fold(Scalar::zero(), |acc, e| acc + Scalar::root_of_unity(n, e));
            if n == 1 {
                assert!(s.is_one());
            } else {
                assert!(s.is_zero(), "sum of {n}-th roots");
            }
        }
        assert_eq!(Scalar::root_of_unity(2, 1), Scalar::from_int(-1));
        assert_eq!(Scalar::root_of_unity(4, 2), Scalar::from_int(-1));
    }

    #[test]
    fn embedding_preserves_arithmetic() {
        let a = Scalar::root_of_unity(3, 1) + Scalar::from_int(2);
        let b = Scalar::root_of_unity(4, 1);
        let ab = &a * &b;
        let (a12, b12) = (a.lift(12), b.lift(12));
        assert_eq!(&a12 * &b12, ab);
        assert_eq!(Scalar::root_of_unity(12, 4), Scalar::root_of_unity(3, 1));
    }

    #[test]
    fn inverses() {
        let a = Scalar::root_of_unity(5, 2) + Scalar::from_q(q(1, 3));
        let one = &a * &a.inv();
        assert!(one.is_one());
        assert_eq!(Scalar::exp_2pi_i(q(-1, 4)), Scalar::root_of_unity(4, 3));
    }
}
