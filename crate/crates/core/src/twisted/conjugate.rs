//! Conjugating module actions by slot permutations: Y^mu(u, x) = Y(mu(u), x).

use std::fmt::Debug;

use super::module::TwistedModule;
use crate::boson::{vertex_operator, GradedVector};
use crate::exact::{Scalar, Q};
use crate::field::Field;
use crate::perm::Permutation;

/// Action of single-slot insertions u^j of V^{(x)k} on some space.
pub trait ModuleAction {
    type Vector: Clone + PartialEq + Debug;

    fn k(&self) -> usize;

    /// The permutation the module is twisted by.
    fn twist(&self) -> Permutation;

    /// Coefficient of z^s of Y(u^slot, z) a, slots 1-indexed.
    fn act(&self, u: &GradedVector, slot: usize, s: Q, a: &Self::Vector) -> Self::Vector;
}

impl ModuleAction for TwistedModule {
    type Vector = GradedVector;

    fn k(&self) -> usize {
        self.k
    }

    fn twist(&self) -> Permutation {
        Permutation::long_cycle(self.k)
    }

    fn act(&self, u: &GradedVector, slot: usize, s: Q, a: &GradedVector) -> GradedVector {
        let mut out = GradedVector::zero(self.lambda);
        for f in self.fields(u, slot) {
            out.add_scaled(&f.apply(s, a), &Scalar::one());
        }
        out
    }
}

/// M(1, lambda_1) (x) ... (x) M(1, lambda_k), acting on pure tensors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UntwistedTensor {
    pub charges: Vec<Q>,
}

impl ModuleAction for UntwistedTensor {
    type Vector = Vec<GradedVector>;

    fn k(&self) -> usize {
        self.charges.len()
    }

    fn twist(&self) -> Permutation {
        Permutation::identity(self.k())
    }

    fn act(&self, u: &GradedVector, slot: usize, s: Q, a: &Vec<GradedVector>) -> Vec<GradedVector> {
        let mut out = a.clone();
        let lambda = self.charges[slot - 1];
        let mut v = GradedVector::zero(lambda);
        for (_, c) in u.homogeneous_components() {
            v.add_scaled(&vertex_operator(&c, lambda).apply(s, &a[slot - 1]), &Scalar::one());
        }
        if v.is_zero() {
            // a pure tensor with a zero factor is zero
            return out.iter().map(|x| GradedVector::zero(x.charge())).collect();
        }
        out[slot - 1] = v;
        out
    }
}

/// W^mu: the same space with u^j acting as u^{mu(j)}.
#[derive(Clone, Debug)]
pub struct Conjugated<A> {
    pub inner: A,
    pub mu: Permutation,
}

impl<A: ModuleAction> ModuleAction for Conjugated<A> {
    type Vector = A::Vector;

    fn k(&self) -> usize {
        self.inner.k()
    }

    /// A tau-twisted module becomes mu^{-1} tau mu-twisted.
    fn twist(&self) -> Permutation {
        self.mu.inverse().compose(&self.inner.twist()).compose(&self.mu)
    }

    fn act(&self, u: &GradedVector, slot: usize, s: Q, a: &A::Vector) -> A::Vector {
        self.inner.act(u, self.mu.apply(slot - 1) + 1, s, a)
    }
}

/// [Y(u^i, z1), Y(v^j, z2)] a = 0 coefficientwise for the given vectors and
/// exponents. Holds exactly on untwisted tensor modules when i != j.
pub fn verify_cross_slot_commutator<A: ModuleAction>(
    w: &A,
    u: &GradedVector,
    i: usize,
    v: &GradedVector,
    j: usize,
    vectors: &[A::Vector],
    exponents: &[Q],
) -> crate::report::CheckResult {
    let mut check = crate::report::CheckResult::new(
        format!("cross_slot_commutator u={u}^{i} v={v}^{j} twist={}", w.twist()),
        format!("{} vectors, {} exponents", vectors.len(), exponents.len()),
    );
    for a in vectors {
        for &s1 in exponents {
            for &s2 in exponents {
                let uv = w.act(u, i, s1, &w.act(v, j, s2, a));
                let vu = w.act(v, j, s2, &w.act(u, i, s1, a));
                check.compare(|| format!("z1^{s1} z2^{s2} on {a:?}"), &uv, &vu);
            }
        }
    }
    check.finish()
}

pub fn conjugate_module<A: ModuleAction>(w: A, mu: Permutation) -> Conjugated<A> {
    assert_eq!(w.k(), mu.k(), "permutation size must match the tensor power");
    Conjugated { inner: w, mu }
}
