//! The sigma-twisted V^{(x)k}-module T_sigma(W) for sigma = (1 2 ... k) and
//! W = M(1, lambda), on the underlying space of W:
//!
//! Y_T(u^1, z) = Y_W(Delta_k(z) u, z^{1/k}),
//! Y_T(u^j, z) = Y_T(u^1, z)|_{z^{1/k} -> eta^{1-j} z^{1/k}}.
//!
//! Coefficients are indexed by the exponent s in (1/k)Z; the coefficient at
//! z^s sends W-weight d to d + k(s + wt u).

use std::sync::Arc;

use num_traits::Zero;

use super::tensor::TensorVector;
use crate::boson::fock::ground_weight;
use crate::boson::{FockField, GradedVector, OperatorSeries, CENTRAL_CHARGE};
use crate::delta::apply_delta;
use crate::exact::{Scalar, Q};
use crate::field::{Cached, Field, FieldRef, Grading};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwistedModule {
    pub k: usize,
    pub lambda: Q,
}

/// Y_T(u^j, z) for homogeneous u in M(1).
pub struct TwistedField {
    k: usize,
    slot: usize,
    lambda: Q,
    weight: Q,
    /// Delta_k(z) u = sum z^q w, with one field per homogeneous w.
    terms: Vec<(Q, FockField)>,
}

impl Field for TwistedField {
    fn grading(&self) -> Grading {
        Grading { scale: self.k as i64, weight: self.weight, source: self.lambda, target: self.lambda }
    }

    fn apply_monomial(&self, s: Q, parts: &[u32]) -> GradedVector {
        let kq = Q::from_integer(self.k as i64);
        let a = GradedVector::monomial(self.lambda, parts.to_vec());
        let mut out = GradedVector::zero(self.lambda);
        for (q, f) in &self.terms {
            let t = kq * (s - *q);
            if !t.is_integer() {
                continue;
            }
            out.add_scaled(&f.apply(t, &a), &Scalar::one());
        }
        if self.slot != 1 && !out.is_zero() {
            let phase = Scalar::exp_2pi_i(Q::from_integer(1 - self.slot as i64) * s);
            out = out.scale(&phase);
        }
        out
    }
}

impl TwistedModule {
    pub fn new(k: usize, lambda: Q) -> Self {
        assert!(k >= 1);
        TwistedModule { k, lambda }
    }

    pub fn ground(&self) -> Q {
        ground_weight(self.lambda)
    }

    /// Lowest L_T(0)-eigenvalue: lambda^2/(2k) + (c/24)(k - 1/k).
    pub fn ground_weight(&self) -> Q {
        let kq = Q::from_integer(self.k as i64);
        self.ground() / kq + Q::new(CENTRAL_CHARGE, 24) * (kq - Q::from_integer(1) / kq)
    }

    /// Y_T(u^j, z) for homogeneous u (memoized).
    pub fn field(&self, u: &GradedVector, slot: usize) -> FieldRef {
        assert!((1..=self.k).contains(&slot), "slot {slot} out of range");
        assert!(u.charge().is_zero(), "twisted fields take vectors of M(1)");
        let weight = u.weight().unwrap_or_else(|| {
            assert!(u.is_zero(), "field of a non-homogeneous vector");
            Q::zero()
        });
        let terms = apply_delta(self.k as u32, u, false)
            .homogeneous_terms()
            .into_iter()
            .map(|(q, _, w)| (q, FockField::new(w, self.lambda)))
            .collect();
        let f = TwistedField { k: self.k, slot, lambda: self.lambda, weight, terms };
        Cached::new(Arc::new(f))
    }

    /// Fields of the homogeneous pieces of u^j.
    pub fn fields(&self, u: &GradedVector, slot: usize) -> Vec<FieldRef> {
        u.homogeneous_components().into_values().map(|c| self.field(&c, slot)).collect()
    }

    /// Coefficient of z^s of Y_T(u, z) a for a sum of single-slot insertions.
    pub fn apply(&self, u: &TensorVector, s: Q, a: &GradedVector) -> GradedVector {
        assert_eq!(u.k(), self.k);
        let mut out = GradedVector::zero(self.lambda);
        for (j, v) in u.slots().iter().enumerate() {
            for f in self.fields(v, j + 1) {
                out.add_scaled(&f.apply(s, a), &Scalar::one());
            }
        }
        out
    }

    /// L_T(n) a: the coefficient of z^{-n-2} in sum_i Y_T(omega^i, z) a.
    pub fn virasoro(&self, n: i64, a: &GradedVector) -> GradedVector {
        let mut out = GradedVector::zero(self.lambda);
        for i in 1..=self.k {
            out.add_scaled(&self.field(&GradedVector::omega(), i).apply(Q::from_integer(-n - 2), a), &Scalar::one());
        }
        out
    }
}

/// Tabulated Y_T(u^j, z) on source weights up to `degree_cap`.
pub fn twisted_vertex(t: &TwistedModule, u: &GradedVector, j: usize, degree_cap: Q, lo: Q, hi: Q) -> OperatorSeries {
    OperatorSeries::from_field(&t.field(u, j), degree_cap, lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boson::{module_basis, virasoro};
    use crate::exact::q;
    use crate::twisted::eigencomponent;

    #[test]
    fn vacuum_acts_as_identity() {
        let t = TwistedModule::new(3, q(1, 2));
        for m in module_basis(q(1, 2), q(1, 8) + 3) {
            let a = GradedVector::from_monomial(&m);
            for j in 1..=3 {
                let f = t.field(&GradedVector::vacuum(), j);
                assert_eq!(f.apply(q(0, 1), &a), a);
                assert!(f.apply(q(1, 3), &a).is_zero());
                assert!(f.apply(q(-1, 1), &a).is_zero());
            }
        }
    }

    #[test]
    fn virasoro_formula_k2() {
        let t = TwistedModule::new(2, q(0, 1));
        let hw = GradedVector::vacuum();
        assert_eq!(t.virasoro(0, &hw), hw.scale(&Scalar::from_q(q(1, 16))));
        assert_eq!(t.ground_weight(), q(1, 16));
        let a = GradedVector::monomial(q(0, 1), vec![2, 1]);
        assert_eq!(t.virasoro(1, &a), virasoro(2, &a).scale(&Scalar::from_q(q(1, 2))));
    }

    #[test]
    fn eigencomponent_support() {
        let k = 3;
        let t = TwistedModule::new(k, q(1, 2));
        let u = TensorVector::single(k, &GradedVector::monomial(q(0, 1), vec![1]), 1);
        let a = GradedVector::monomial(q(1, 2), vec![1]);
        for r in 0..k as i64 {
            let ur = eigencomponent(&u, r);
            for step in -12i64..6 {
                let s = q(step, k as i64);
                let v = t.apply(&ur, s, &a);
                let in_coset = (s + q(r, k as i64)).is_integer();
                if !in_coset {
                    assert!(v.is_zero(), "r={r} s={s}");
                }
            }
        }
    }
}
