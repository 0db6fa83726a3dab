//! Sums of single-slot insertions u^j = 1 (x) ... (x) u (x) ... (x) 1 in
//! V^{(x)k}, closed under the cyclic permutation.

use std::fmt;

use crate::boson::GradedVector;
use crate::exact::{Scalar, Q};

#[derive(Clone, PartialEq, Eq)]
pub struct TensorVector {
    /// slots[j] is the vector placed in slot j + 1.
    slots: Vec<GradedVector>,
}

impl TensorVector {
    pub fn zero(k: usize) -> Self {
        assert!(k >= 1);
        TensorVector { slots: vec![GradedVector::zero(Q::from_integer(0)); k] }
    }

    /// u^j with 1-indexed slot j.
    pub fn single(k: usize, u: &GradedVector, j: usize) -> Self {
        assert!((1..=k).contains(&j), "slot {j} out of range 1..={k}");
        let mut t = Self::zero(k);
        t.add_slot(j, u, &Scalar::one());
        t
    }

    pub fn k(&self) -> usize {
        self.slots.len()
    }

    pub fn slot(&self, j: usize) -> &GradedVector {
        &self.slots[j - 1]
    }

    pub fn slots(&self) -> &[GradedVector] {
        &self.slots
    }

    pub fn is_zero(&self) -> bool {
        self.slots.iter().all(|s| s.is_zero())
    }

    /// Adds c u^j. The vacuum is the same tensor in every slot and is kept in
    /// slot 1.
    pub fn add_slot(&mut self, j: usize, u: &GradedVector, c: &Scalar) {
        assert!(u.charge() == Q::from_integer(0) || u.is_zero(), "slots hold vectors of M(1)");
        let vac = u.coeff(&[]);
        let mut rest = u.clone();
        if !vac.is_zero() {
            rest.add_term(vec![], &-vac.clone());
            self.slots[0].add_term(vec![], &(vac * c));
        }
        self.slots[j - 1].add_scaled(&rest, c);
    }

    pub fn add_scaled(&mut self, other: &TensorVector, c: &Scalar) {
        assert_eq!(self.k(), other.k());
        for (j, s) in other.slots.iter().enumerate() {
            self.add_slot(j + 1, s, c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.k());
        out.add_scaled(self, c);
        out
    }

    /// sigma u^j = u^{j+1}, with u^{k+1} = u^1.
    pub fn sigma(&self) -> Self {
        let k = self.k();
        let mut out = Self::zero(k);
        for (j, s) in self.slots.iter().enumerate() {
            out.add_slot((j + 1) % k + 1, s, &Scalar::one());
        }
        out
    }

    pub fn sigma_pow(&self, n: usize) -> Self {
        (0..n % self.k()).fold(self.clone(), |t, _| t.sigma())
    }

    /// Relabels slots: u^j goes to slot perm(j). `perm` is 0-indexed.
    pub fn permute(&self, perm: &crate::perm::Permutation) -> Self {
        let mut out = Self::zero(self.k());
        for (j, s) in self.slots.iter().enumerate() {
            out.add_slot(perm.apply(j) + 1, s, &Scalar::one());
        }
        out
    }
}

/// u^{(r)} = (1/k) sum_j eta^{-jr} sigma^j u, the eta^r-eigencomponent of u.
pub fn eigencomponent(u: &TensorVector, r: i64) -> TensorVector {
    let k = u.k();
    let mut out = TensorVector::zero(k);
    let inv = Scalar::from_q(Q::new(1, k as i64));
    for j in 0..k {
        let c = Scalar::root_of_unity(k as u32, -(j as i64) * r) * &inv;
        out.add_scaled(&u.sigma_pow(j), &c);
    }
    out
}

impl fmt::Debug for TensorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .slots
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_zero())
            .map(|(j, s)| format!("[{s}]^{}", j + 1))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn a1() -> GradedVector {
        GradedVector::monomial(q(0, 1), vec![1])
    }

    #[test]
    fn projection_examples() {
        let u = TensorVector::single(2, &a1(), 1);
        let mut expected = TensorVector::single(2, &a1(), 1);
        expected.add_slot(2, &a1(), &Scalar::one());
        assert_eq!(eigencomponent(&u, 0), expected.scale(&Scalar::from_q(q(1, 2))));
    }

    #[test]
    fn resolution_and_eigenvalues() {
        for k in 2..=4 {
            let mut u = TensorVector::single(k, &a1(), 1);
            u.add_slot(k, &GradedVector::omega(), &Scalar::from_int(3));
            u.add_slot(2, &GradedVector::vacuum(), &Scalar::from_int(2));
            let mut sum = TensorVector::zero(k);
            for r in 0..k as i64 {
                let c = eigencomponent(&u, r);
                assert_eq!(c.sigma(), c.scale(&Scalar::root_of_unity(k as u32, r)));
                sum.add_scaled(&c, &Scalar::one());
            }
            assert_eq!(sum, u);
        }
    }

    #[test]
    fn vacuum_is_canonical() {
        let a = TensorVector::single(3, &GradedVector::vacuum(), 2);
        assert_eq!(a, TensorVector::single(3, &GradedVector::vacuum(), 1));
        assert_eq!(a.sigma(), a);
    }
}
