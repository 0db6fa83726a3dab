//! Operator-valued formal series evaluated one coefficient at a time.
//!
//! A [`Field`] is any series `F(z) = sum_s F_s z^s` of maps between Fock
//! modules (untwisted vertex operators, intertwiners, twisted operators,
//! generalized intertwiners). The coefficient `F_s` sends weight `d` to
//! weight `d + scale * (s + weight)`, so supports and lower bounds follow
//! from the grading alone.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use crate::boson::fock::{ground_weight, monomial_degree, GradedVector, Parts};
use crate::exact::{Scalar, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Grading {
    /// 1 for untwisted operators, k for operators on T_sigma(W) written in
    /// terms of W-weights.
    pub scale: i64,
    pub weight: Q,
    pub source: Q,
    pub target: Q,
}

impl Grading {
    pub fn target_ground(&self) -> Q {
        ground_weight(self.target)
    }

    pub fn out_degree(&self, in_degree: Q, s: Q) -> Q {
        in_degree + Q::from_integer(self.scale) * (s + self.weight)
    }

    pub fn exponent_for(&self, in_degree: Q, out_degree: Q) -> Q {
        (out_degree - in_degree) / Q::from_integer(self.scale) - self.weight
    }

    /// Lowest exponent that can act nontrivially on weight `in_degree`.
    pub fn lowest(&self, in_degree: Q) -> Q {
        self.exponent_for(in_degree, self.target_ground())
    }

    /// Whether `F_s` can be nonzero on weight `in_degree`.
    pub fn admits(&self, in_degree: Q, s: Q) -> bool {
        let excess = self.out_degree(in_degree, s) - self.target_ground();
        excess >= Q::zero() && excess.is_integer()
    }

    /// Exponents whose output weight lies in `[ground, ground + excess_cap]`.
    pub fn exponents(&self, in_degree: Q, excess_cap: i64) -> Vec<Q> {
        (0..=excess_cap)
            .map(|j| self.exponent_for(in_degree, self.target_ground() + Q::from_integer(j)))
            .collect()
    }
}

pub trait Field: Send + Sync {
    fn grading(&self) -> Grading;

    /// `F_s` applied to the monomial of the source module with these parts.
    /// Only called when the grading admits a nonzero result.
    fn apply_monomial(&self, s: Q, parts: &[u32]) -> GradedVector;

    fn apply(&self, s: Q, a: &GradedVector) -> GradedVector {
        let g = self.grading();
        let mut out = GradedVector::zero(g.target);
        if a.is_zero() {
            return out;
        }
        assert_eq!(a.charge(), g.source, "field applied to a vector of the wrong module");
        for (p, c) in a.terms() {
            if !g.admits(monomial_degree(g.source, p), s) {
                continue;
            }
            out.add_scaled(&self.apply_monomial(s, p), c);
        }
        out
    }
}

pub type FieldRef = Arc<dyn Field>;

impl Field for FieldRef {
    fn grading(&self) -> Grading {
        (**self).grading()
    }
    fn apply_monomial(&self, s: Q, parts: &[u32]) -> GradedVector {
        (**self).apply_monomial(s, parts)
    }
    fn apply(&self, s: Q, a: &GradedVector) -> GradedVector {
        (**self).apply(s, a)
    }
}

/// Memoizes monomial coefficients of an inner field. Results are identical
/// with or without the cache.
pub struct Cached {
    inner: FieldRef,
    cache: Mutex<HashMap<(Q, Parts), GradedVector>>,
}

impl Cached {
    pub fn new(inner: FieldRef) -> Arc<Self> {
        Arc::new(Cached { inner, cache: Mutex::new(HashMap::new()) })
    }
}

impl Field for Cached {
    fn grading(&self) -> Grading {
        self.inner.grading()
    }

    fn apply_monomial(&self, s: Q, parts: &[u32]) -> GradedVector {
        let key = (s, parts.to_vec());
        if let Some(v) = self.cache.lock().unwrap().get(&key) {
            return v.clone();
        }
        let v = self.inner.apply_monomial(s, parts);
        self.cache.lock().unwrap().insert(key, v.clone());
        v
    }
}

/// Finite linear combination of fields sharing one grading.
pub struct Combination {
    pub grading: Grading,
    pub terms: Vec<(Scalar, FieldRef)>,
}

impl Field for Combination {
    fn grading(&self) -> Grading {
        self.grading
    }

    fn apply_monomial(&self, s: Q, parts: &[u32]) -> GradedVector {
        let mut out = GradedVector::zero(self.grading.target);
        let a = GradedVector::monomial(self.grading.source, parts.to_vec());
        for (c, f) in &self.terms {
            out.add_scaled(&f.apply(s, &a), c);
        }
        out
    }
}

/// The identity series on a module of the given charge.
pub struct Identity(pub Q);

impl Field for Identity {
    fn grading(&self) -> Grading {
        Grading { scale: 1, weight: Q::zero(), source: self.0, target: self.0 }
    }

    fn apply_monomial(&self, s: Q, parts: &[u32]) -> GradedVector {
        if s.is_zero() {
            GradedVector::monomial(self.0, parts.to_vec())
        } else {
            GradedVector::zero(self.0)
        }
    }
}
