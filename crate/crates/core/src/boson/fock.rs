//! Fock modules M(1, lambda) realized as polynomial rings in the creation
//! modes: the monomial with parts n_1 >= ... >= n_r is
//! alpha(-n_1) ... alpha(-n_r) applied to the highest-weight vector.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_traits::Zero;
use serde::Serialize;

use crate::exact::{Coeff, Scalar, Q};

pub type Parts = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FockMonomial {
    pub charge: Q,
    pub parts: Parts,
}

impl FockMonomial {
    pub fn new(charge: Q, mut parts: Parts) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        assert!(parts.iter().all(|&p| p > 0), "oscillator modes must be positive");
        FockMonomial { charge, parts }
    }

    pub fn degree(&self) -> Q {
        monomial_degree(self.charge, &self.parts)
    }
}

pub fn ground_weight(charge: Q) -> Q {
    charge * charge / Q::from_integer(2)
}

pub fn monomial_degree(charge: Q, parts: &[u32]) -> Q {
    ground_weight(charge) + Q::from_integer(parts.iter().map(|&p| p as i64).sum())
}

fn partition_cache() -> &'static Mutex<Vec<Vec<Parts>>> {
    static CACHE: OnceLock<Mutex<Vec<Vec<Parts>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![vec![vec![]]]))
}

/// Partitions of `n`, parts descending, in reverse lexicographic order.
pub fn partitions(n: u32) -> Vec<Parts> {
    {
        let cache = partition_cache().lock().unwrap();
        if let Some(p) = cache.get(n as usize) {
            return p.clone();
        }
    }
    fn rec(n: u32, max: u32, prefix: &mut Parts, out: &mut Vec<Parts>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for p in (1..=max.min(n)).rev() {
            prefix.push(p);
            rec(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut cache = partition_cache().lock().unwrap();
    while cache.len() <= n as usize {
        let m = cache.len() as u32;
        let mut out = Vec::new();
        rec(m, m, &mut Vec::new(), &mut out);
        cache.push(out);
    }
    cache[n as usize].clone()
}

/// All monomials of M(1, lambda) of weight at most `degree_cap`, ordered by
/// weight and then by partition.
pub fn module_basis(charge: Q, degree_cap: Q) -> Vec<FockMonomial> {
    let excess = degree_cap - ground_weight(charge);
    if excess < Q::zero() {
        return Vec::new();
    }
    let top = excess.floor().to_integer() as u32;
    (0..=top)
        .flat_map(|n| partitions(n).into_iter().map(move |p| FockMonomial { charge, parts: p }))
        .collect()
}

pub(crate) fn merge_parts(a: &[u32], b: &[u32]) -> Parts {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] >= b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Finite linear combination of Fock monomials of one charge.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedVector {
    charge: Q,
    terms: BTreeMap<Parts, Scalar>,
}

impl GradedVector {
    pub fn zero(charge: Q) -> Self {
        GradedVector { charge, terms: BTreeMap::new() }
    }

    /// Highest-weight vector of M(1, charge); the vacuum when charge is 0.
    pub fn hw(charge: Q) -> Self {
        Self::monomial(charge, vec![])
    }

    pub fn vacuum() -> Self {
        Self::hw(Q::zero())
    }

    pub fn monomial(charge: Q, parts: Parts) -> Self {
        let m = FockMonomial::new(charge, parts);
        let mut terms = BTreeMap::new();
        terms.insert(m.parts, Scalar::one());
        GradedVector { charge, terms }
    }

    pub fn from_monomial(m: &FockMonomial) -> Self {
        Self::monomial(m.charge, m.parts.clone())
    }

    /// The conformal vector (1/2) alpha(-1)^2 1 of M(1).
    pub fn omega() -> Self {
        Self::monomial(Q::zero(), vec![1, 1]).scale(&Scalar::from_q(Q::new(1, 2)))
    }

    pub fn charge(&self) -> Q {
        self.charge
    }

    pub fn terms(&self) -> &BTreeMap<Parts, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, parts: &[u32]) -> Scalar {
        self.terms.get(parts).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, parts: Parts, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&parts) {
            Some(old) => {
                *old += c;
                if old.is_zero() {
                    self.terms.remove(&parts);
                }
            }
            None => {
                self.terms.insert(parts, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &GradedVector, c: &Scalar) {
        if other.is_zero() || c.is_zero() {
            return;
        }
        assert_eq!(self.charge, other.charge, "adding vectors of different charge");
        for (p, x) in &other.terms {
            self.add_term(p.clone(), &(x * c));
        }
    }

    pub fn add(&self, other: &GradedVector) -> GradedVector {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn sub(&self, other: &GradedVector) -> GradedVector {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::from_int(-1));
        out
    }

    pub fn scale(&self, c: &Scalar) -> GradedVector {
        if c.is_zero() {
            return GradedVector::zero(self.charge);
        }
        GradedVector { charge: self.charge, terms: self.terms.iter().map(|(p, x)| (p.clone(), x * c)).collect() }
    }

    /// Reinterprets the oscillator polynomial in the module of another charge.
    pub fn with_charge(mut self, charge: Q) -> GradedVector {
        self.charge = charge;
        self
    }

    pub fn degree_of(&self, parts: &[u32]) -> Q {
        monomial_degree(self.charge, parts)
    }

    pub fn homogeneous_components(&self) -> BTreeMap<Q, GradedVector> {
        let mut out: BTreeMap<Q, GradedVector> = BTreeMap::new();
        for (p, c) in &self.terms {
            out.entry(self.degree_of(p)).or_insert_with(|| GradedVector::zero(self.charge)).add_term(p.clone(), c);
        }
        out
    }

    /// The common weight of all terms, if the vector is homogeneous and nonzero.
    pub fn weight(&self) -> Option<Q> {
        let mut it = self.terms.keys().map(|p| self.degree_of(p));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn max_degree(&self) -> Option<Q> {
        self.terms.keys().map(|p| self.degree_of(p)).max()
    }

    /// Product as polynomials in the creation modes (charge of `self`).
    pub fn poly_mul(&self, other: &GradedVector) -> GradedVector {
        let mut out = GradedVector::zero(self.charge);
        for (p, a) in &self.terms {
            for (r, b) in &other.terms {
                out.add_term(merge_parts(p, r), &(a * b));
            }
        }
        out
    }

    /// The mode alpha(m): creation for m < 0, the charge for m = 0 and
    /// m d/dx_m for m > 0.
    pub fn alpha(&self, m: i64) -> GradedVector {
        match m.cmp(&0) {
            std::cmp::Ordering::Less => {
                let mut out = GradedVector::zero(self.charge);
                let n = (-m) as u32;
                for (p, c) in &self.terms {
                    out.add_term(merge_parts(p, &[n]), c);
                }
                out
            }
            std::cmp::Ordering::Equal => self.scale(&Scalar::from_q(self.charge)),
            std::cmp::Ordering::Greater => {
                let n = m as u32;
                let mut out = GradedVector::zero(self.charge);
                for (p, c) in &self.terms {
                    let mult = p.iter().filter(|&&x| x == n).count() as i64;
                    if mult == 0 {
                        continue;
                    }
                    let pos = p.iter().position(|&x| x == n).unwrap();
                    let mut r = p.clone();
                    r.remove(pos);
                    out.add_term(r, &(c * &Scalar::from_int(mult * m)));
                }
                out
            }
        }
    }

    /// Largest annihilation mode that can act nontrivially.
    pub fn max_part(&self) -> u32 {
        self.terms.keys().filter_map(|p| p.first().copied()).max().unwrap_or(0)
    }
}

impl Coeff for GradedVector {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_assign(&mut self, other: &Self) {
        self.add_scaled(other, &Scalar::one());
    }
    fn scaled(&self, s: &Scalar) -> Self {
        self.scale(s)
    }
}

impl fmt::Display for GradedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (p, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if !c.is_one() {
                write!(f, "({c})")?;
            }
            for m in p {
                write!(f, "a(-{m})")?;
            }
            write!(f, "|{}>", self.charge)?;
        }
        Ok(())
    }
}

impl fmt::Debug for GradedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn basis_examples() {
        let b = module_basis(q(0, 1), q(2, 1));
        let parts: Vec<Parts> = b.iter().map(|m| m.parts.clone()).collect();
        assert_eq!(parts, vec![vec![], vec![1], vec![2], vec![1, 1]]);
        assert_eq!(module_basis(q(0, 1), q(0, 1)).len(), 1);
        let h = module_basis(q(1, 2), q(9, 8));
        assert_eq!(h.len(), 2);
        assert_eq!(h[0].degree(), q(1, 8));
        assert_eq!(h[1].degree(), q(9, 8));
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..10).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
    }

    #[test]
    fn heisenberg_commutator_on_monomials() {
        // [alpha(m), alpha(n)] = m delta_{m+n,0}
        let v = GradedVector::monomial(q(1, 3), vec![3, 1, 1]);
        for m in -3i64..=3 {
            for n in -3i64..=3 {
                let lhs = v.alpha(n).alpha(m).sub(&v.alpha(m).alpha(n));
                let expected = if m + n == 0 { v.scale(&Scalar::from_int(m)) } else { GradedVector::zero(q(1, 3)) };
                assert_eq!(lhs, expected, "m={m} n={n}");
            }
        }
    }
}
