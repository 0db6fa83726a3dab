//! Generalized intertwining operators phi(x) from T_sigma(N) to T_sigma(W)
//! and the action
//!
//! u_n^H phi(x) = Res_{x1} sum_{j>=0} C(-r/k, j) x^{-r/k-j} x1^{r/k}
//!     ((x1-x)^{n+j} Y_3(u,x1) phi(x) - (-x+x1)^{n+j} phi(x) Y_2(u,x1))
//!
//! for u in the eta^r-eigenspace of sigma. Coefficients are indexed by the
//! exponent of x, as for every other [`Field`].

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::boson::fock::{ground_weight, monomial_degree};
use crate::boson::GradedVector;
use crate::exact::{binom_i, binom_q, sign, Scalar, Q};
use crate::field::{Cached, Field, FieldRef, Grading};
use crate::transport::IntertwinerMap;
use crate::twisted::{eigencomponent, TensorVector, TwistedModule};

/// An element phi(x) of H(T_sigma(N), T_sigma(W)) that is homogeneous of
/// weight `weight()`. `floor` is the lowest weight of the module these
/// weights come from; it bounds the modes u_n^H that can act nontrivially.
#[derive(Clone)]
pub struct GenInt {
    pub label: String,
    pub source: TwistedModule,
    pub target: TwistedModule,
    pub floor: Q,
    field: FieldRef,
}

impl fmt::Debug for GenInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [weight {}]", self.label, self.weight())
    }
}

/// Common weight of the nonzero slots of u.
pub fn tensor_weight(u: &TensorVector) -> Q {
    let mut weight = None;
    for s in u.slots().iter().filter(|s| !s.is_zero()) {
        let w = s.weight().expect("non-homogeneous slot");
        assert!(weight.is_none_or(|x| x == w), "u must be homogeneous");
        weight = Some(w);
    }
    weight.unwrap_or_else(Q::zero)
}

impl GenInt {
    pub fn new(label: impl Into<String>, source: TwistedModule, target: TwistedModule, floor: Q, field: FieldRef) -> Self {
        let g = field.grading();
        assert_eq!((g.source, g.target, g.scale), (source.lambda, target.lambda, source.k as i64));
        GenInt { label: label.into(), source, target, floor, field }
    }

    /// phi(x) = Ybar(w, x) for an intertwiner of type (T(W); M T(N)) and
    /// homogeneous w in M.
    pub fn from_intertwiner(ybar: &IntertwinerMap, w: &GradedVector) -> Self {
        let k = ybar.scale as usize;
        assert!(w.weight().is_some(), "from_intertwiner takes a homogeneous vector");
        GenInt::new(
            format!("{}({w})", ybar.name),
            TwistedModule::new(k, ybar.source),
            TwistedModule::new(k, ybar.target),
            ground_weight(ybar.input),
            ybar.field(w),
        )
    }

    pub fn k(&self) -> usize {
        self.source.k
    }

    pub fn weight(&self) -> Q {
        self.field.grading().weight
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    /// Coefficient of x^t applied to a.
    pub fn apply(&self, t: Q, a: &GradedVector) -> GradedVector {
        self.field.apply(t, a)
    }

    pub fn lowest(&self, d: Q) -> Q {
        self.field.grading().lowest(d)
    }

    /// Weak commutativity order recorded for u: u_n^H phi has weight
    /// wt u + wt phi - n - 1, which cannot drop below `floor`.
    pub fn order(&self, u: &TensorVector) -> i64 {
        let excess = tensor_weight(u) + self.weight() - self.floor;
        excess.ceil().to_integer().max(0)
    }
}

/// How far the j-sum runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JSum {
    /// j < K - n with K the recorded order.
    Order,
    /// j < bound regardless of orders; used as an untruncated oracle.
    Bound(i64),
}

/// Y(u, x) on one twisted module for an eigencomponent, split by slot.
pub(crate) struct SlotFields {
    fields: Vec<FieldRef>,
}

impl SlotFields {
    pub(crate) fn new(t: &TwistedModule, u: &TensorVector) -> Self {
        let fields = u
            .slots()
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_zero())
            .map(|(j, s)| t.field(s, j + 1))
            .collect();
        SlotFields { fields }
    }

    pub(crate) fn apply(&self, s: Q, a: &GradedVector, target: Q) -> GradedVector {
        let mut out = GradedVector::zero(target);
        for f in &self.fields {
            out.add_scaled(&f.apply(s, a), &Scalar::one());
        }
        out
    }
}

struct Component {
    /// r / k with 0 <= r < k.
    frac: Q,
    on_target: SlotFields,
    on_source: SlotFields,
    j_end: i64,
}

struct HAction {
    grading: Grading,
    phi: GenInt,
    n: i64,
    wt_u: Q,
    parts: Vec<Component>,
}

impl Field for HAction {
    fn grading(&self) -> Grading {
        self.grading
    }

    fn apply_monomial(&self, t: Q, parts: &[u32]) -> GradedVector {
        let src = self.phi.source.lambda;
        let tgt = self.phi.target.lambda;
        let a = GradedVector::monomial(src, parts.to_vec());
        let d = monomial_degree(src, parts);
        let kq = Q::from_integer(self.phi.k() as i64);
        let low_phi = self.phi.lowest(d);
        let low_u = (ground_weight(src) - d) / kq - self.wt_u;
        let mut out = GradedVector::zero(tgt);
        for c in &self.parts {
            for j in 0..c.j_end {
                let cj = binom_q(-c.frac, j as u64);
                let m = self.n + j;
                // (x1 - x)^m Y_3(u, x1) phi(x)
                let top = (t + c.frac + j - low_phi).floor().to_integer();
                let top = if m >= 0 { top.min(m) } else { top };
                for i in 0..=top {
                    let v = self.phi.apply(t + c.frac + j - i, &a);
                    if v.is_zero() {
                        continue;
                    }
                    let s = -c.frac - 1 - m + i;
                    let coeff = &cj * binom_i(m, i as u64) * sign(i);
                    out.add_scaled(&c.on_target.apply(s, &v, tgt), &Scalar::from_rational(coeff));
                }
                // (-x + x1)^m phi(x) Y_2(u, x1)
                let top = (-c.frac - 1 - low_u).floor().to_integer();
                let top = if m >= 0 { top.min(m) } else { top };
                for i in 0..=top {
                    let b = c.on_source.apply(-c.frac - 1 - i, &a, src);
                    if b.is_zero() {
                        continue;
                    }
                    let coeff = &cj * binom_i(m, i as u64) * sign(m - i + 1);
                    out.add_scaled(&self.phi.apply(t + c.frac - self.n + i, &b), &Scalar::from_rational(coeff));
                }
            }
        }
        out
    }
}

/// u_n^H phi for homogeneous u, decomposed into sigma-eigencomponents.
pub fn apply_yh(u: &TensorVector, n: i64, phi: &GenInt) -> GenInt {
    apply_yh_with(u, n, phi, JSum::Order)
}

pub fn apply_yh_with(u: &TensorVector, n: i64, phi: &GenInt, jsum: JSum) -> GenInt {
    let k = phi.k();
    assert_eq!(u.k(), k, "u lives in the wrong tensor power");
    let wt_u = tensor_weight(u);
    let order = phi.order(u);
    let parts = (0..k as i64)
        .filter_map(|r| {
            let ur = eigencomponent(u, r);
            if ur.is_zero() {
                return None;
            }
            let j_end = match jsum {
                JSum::Order => order - n,
                JSum::Bound(b) => b,
            };
            Some(Component {
                frac: Q::new(r, k as i64),
                on_target: SlotFields::new(&phi.target, &ur),
                on_source: SlotFields::new(&phi.source, &ur),
                j_end,
            })
        })
        .collect();
    let g = phi.field.grading();
    let grading = Grading { weight: g.weight + wt_u - n - 1, ..g };
    let label = format!("{u:?}_{n}^H {}", phi.label);
    let action = HAction { grading, phi: phi.clone(), n, wt_u, parts };
    GenInt { label, source: phi.source, target: phi.target, floor: phi.floor, field: Cached::new(Arc::new(action)) }
}
