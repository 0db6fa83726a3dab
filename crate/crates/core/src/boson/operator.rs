//! Materialized operator series: exponent-indexed sparse matrices between
//! truncated Fock modules.

use std::collections::BTreeMap;

use serde::Serialize;

use super::fock::{module_basis, GradedVector, Parts};
use crate::exact::{Exponent, Q};
use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub lo: Exponent,
    pub hi: Exponent,
}

#[derive(Clone, Debug)]
pub struct OperatorSeries {
    pub source: Q,
    pub target: Q,
    pub scale: i64,
    pub weight: Q,
    pub window: Window,
    /// Source weights up to this cap are tabulated.
    pub degree_cap: Q,
    pub entries: BTreeMap<Exponent, BTreeMap<Parts, GradedVector>>,
}

impl OperatorSeries {
    /// Tabulates `field` on every source basis monomial of weight at most
    /// `degree_cap`, for all admissible exponents in `[lo, hi]`.
    pub fn from_field(field: &dyn Field, degree_cap: Q, lo: Q, hi: Q) -> Self {
        let g = field.grading();
        let mut entries: BTreeMap<Exponent, BTreeMap<Parts, GradedVector>> = BTreeMap::new();
        for m in module_basis(g.source, degree_cap) {
            let d = m.degree();
            let mut s = g.lowest(d).max(lo);
            // align to the admissible coset
            let step = Q::new(1, g.scale);
            let off = (s - g.lowest(d)) / step;
            s = g.lowest(d) + off.ceil() * step;
            while s <= hi {
                let v = field.apply_monomial(s, &m.parts);
                if !v.is_zero() {
                    entries.entry(Exponent(s)).or_default().insert(m.parts.clone(), v);
                }
                s += step;
            }
        }
        OperatorSeries {
            source: g.source,
            target: g.target,
            scale: g.scale,
            weight: g.weight,
            window: Window { lo: Exponent(lo), hi: Exponent(hi) },
            degree_cap,
            entries,
        }
    }

    pub fn apply(&self, s: Q, a: &GradedVector) -> GradedVector {
        let mut out = GradedVector::zero(self.target);
        if let Some(block) = self.entries.get(&Exponent(s)) {
            for (p, c) in a.terms() {
                if let Some(v) = block.get(p) {
                    out.add_scaled(v, c);
                }
            }
        }
        out
    }

    /// Every stored block maps weight d to weight d + scale (s + weight).
    pub fn grading_holds(&self) -> bool {
        self.entries.iter().all(|(s, block)| {
            block.iter().all(|(p, v)| {
                let din = super::fock::monomial_degree(self.source, p);
                let want = din + Q::from_integer(self.scale) * (s.0 + self.weight);
                v.terms().keys().all(|r| v.degree_of(r) == want)
            })
        })
    }

    pub fn exponents(&self) -> Vec<Exponent> {
        self.entries.keys().copied().collect()
    }
}
