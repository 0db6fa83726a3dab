//! Images of vectors under Delta_k(z), Delta_k(z)^{-1} and
//! Phi_k(z) = Delta_k(z^k)^{-1}.
//!
//! On a Fock module of charge lambda the factor k^{-L(0)} is taken as
//! k^{-(L(0) - lambda^2/2)}, which differs from it by a constant on the module.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::coeffs::coefficients;
use crate::boson::fock::ground_weight;
use crate::boson::{virasoro, GradedVector};
use crate::exact::{Scalar, Q};

/// A finite z-series with vector coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaImage {
    pub k: u32,
    pub input: GradedVector,
    pub entries: BTreeMap<Q, GradedVector>,
}

impl DeltaImage {
    fn empty(k: u32, input: &GradedVector) -> Self {
        DeltaImage { k, input: input.clone(), entries: BTreeMap::new() }
    }

    fn add(&mut self, e: Q, v: &GradedVector, c: &Scalar) {
        if v.is_zero() || c.is_zero() {
            return;
        }
        let entry = self.entries.entry(e).or_insert_with(|| GradedVector::zero(v.charge()));
        entry.add_scaled(v, c);
        if entry.is_zero() {
            self.entries.remove(&e);
        }
    }

    pub fn coeff(&self, e: Q) -> GradedVector {
        self.entries.get(&e).cloned().unwrap_or_else(|| GradedVector::zero(self.input.charge()))
    }

    /// Entries split into homogeneous pieces: (exponent, weight, vector).
    pub fn homogeneous_terms(&self) -> Vec<(Q, Q, GradedVector)> {
        let mut out = Vec::new();
        for (e, v) in &self.entries {
            for (wt, c) in v.homogeneous_components() {
                out.push((*e, wt, c));
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// exp(sign * sum_m a_m y^m L(m)) v as a map from the power of y to vectors.
fn exp_virasoro(k: u32, v: &GradedVector, negate: bool) -> BTreeMap<u32, GradedVector> {
    let charge = v.charge();
    let Some(top) = v.max_degree() else { return BTreeMap::new() };
    let span = (top - ground_weight(charge)).floor().to_integer().max(0) as usize;
    let a = coefficients(k, span.max(1));
    let mut total: BTreeMap<u32, GradedVector> = BTreeMap::new();
    let mut term: BTreeMap<u32, GradedVector> = BTreeMap::from([(0, v.clone())]);
    let mut p = 0i64;
    while !term.is_empty() {
        for (j, x) in &term {
            total.entry(*j).or_insert_with(|| GradedVector::zero(charge)).add_scaled(x, &Scalar::one());
        }
        p += 1;
        let mut next: BTreeMap<u32, GradedVector> = BTreeMap::new();
        for (j, x) in &term {
            for m in 1..=span {
                let am = a.get(m);
                if am.is_zero() {
                    continue;
                }
                let lx = virasoro(m as i64, x);
                if lx.is_zero() {
                    continue;
                }
                let mut c = Scalar::from_rational(am) * Scalar::from_q(Q::new(1, p));
                if negate {
                    c = -c;
                }
                let entry = next.entry(*j + m as u32).or_insert_with(|| GradedVector::zero(charge));
                entry.add_scaled(&lx, &c);
            }
        }
        next.retain(|_, x| !x.is_zero());
        term = next;
    }
    total.retain(|_, x| !x.is_zero());
    total
}

fn kpow(k: u32, e: Q) -> Scalar {
    assert!(e.is_integer(), "weight offset must be integral");
    Scalar::from_int(k as i64).pow(e.to_integer())
}

/// Delta_k(z) v, or Delta_k(z)^{-1} v when `inverse` is set.
pub fn apply_delta(k: u32, v: &GradedVector, inverse: bool) -> DeltaImage {
    let kq = Q::from_integer(k as i64);
    let g = ground_weight(v.charge());
    let mut out = DeltaImage::empty(k, v);
    for (n, comp) in v.homogeneous_components() {
        if !inverse {
            let scalar = kpow(k, -(n - g));
            for (j, x) in exp_virasoro(k, &comp, false) {
                let e = (Q::from_integer(1) / kq - 1) * n - Q::from_integer(j as i64) / kq;
                out.add(e, &x, &scalar);
            }
        } else {
            for (j, x) in exp_virasoro(k, &comp, true) {
                let wt = n - Q::from_integer(j as i64);
                let e = (Q::from_integer(1) - Q::from_integer(1) / kq) * wt - Q::from_integer(j as i64) / kq;
                out.add(e, &x, &kpow(k, wt - g));
            }
        }
    }
    out
}

/// Phi_k(z) v = Delta_k(z^k)^{-1} v = (k z^{k-1})^{L(0)} exp(-sum a_n z^{-n} L(n)) v.
pub fn apply_phi(k: u32, v: &GradedVector) -> DeltaImage {
    let inv = apply_delta(k, v, true);
    let kq = Q::from_integer(k as i64);
    DeltaImage { k, input: v.clone(), entries: inv.entries.into_iter().map(|(e, x)| (e * kq, x)).collect() }
}

/// Applies an image-producing map to every coefficient of an image and
/// collects exponents additively.
pub fn compose(outer: impl Fn(&GradedVector) -> DeltaImage, inner: &DeltaImage) -> DeltaImage {
    let mut out = DeltaImage::empty(inner.k, &inner.input);
    for (e, x) in &inner.entries {
        for (f, y) in outer(x).entries {
            out.add(*e + f, &y, &Scalar::one());
        }
    }
    out
}
