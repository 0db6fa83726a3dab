//! Intertwining operators as maps w -> Y(w, z), and the transport between
//! I_V(W; M N) and I_{V^(x)k}(T_sigma(W); M^1 T_sigma(N)):
//!
//! forward:  Ybar(w^1, z) = Y(Delta_k(z) w, z^{1/k}),
//! inverse:  Y(w, z) = Ybar((Phi_k(z) w)^1, z^k).

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::boson::fock::ground_weight;
use crate::boson::{FockField, GradedVector};
use crate::delta::{apply_delta, apply_phi};
use crate::exact::{Scalar, Q};
use crate::field::{Cached, Field, FieldRef, Grading};
use crate::twisted::TwistedModule;

type FieldFn = dyn Fn(&GradedVector) -> FieldRef + Send + Sync;

/// An intertwining operator of type (target; input source), evaluated one
/// homogeneous vector at a time. `scale` is k on twisted modules.
#[derive(Clone)]
pub struct IntertwinerMap {
    pub name: String,
    pub input: Q,
    pub source: Q,
    pub target: Q,
    pub scale: i64,
    field: Arc<FieldFn>,
}

impl fmt::Debug for IntertwinerMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [M(1,{}) x M(1,{}) -> M(1,{}), scale {}]", self.name, self.input, self.source, self.target, self.scale)
    }
}

impl IntertwinerMap {
    pub fn new(
        name: impl Into<String>,
        input: Q,
        source: Q,
        target: Q,
        scale: i64,
        field: impl Fn(&GradedVector) -> FieldRef + Send + Sync + 'static,
    ) -> Self {
        IntertwinerMap { name: name.into(), input, source, target, scale, field: Arc::new(field) }
    }

    /// Y(w, z) for homogeneous w.
    pub fn field(&self, w: &GradedVector) -> FieldRef {
        assert_eq!(w.charge(), self.input, "{}: vector of the wrong module", self.name);
        (self.field)(w)
    }

    /// Coefficient of z^s of Y(w, z) a for any w.
    pub fn apply(&self, w: &GradedVector, s: Q, a: &GradedVector) -> GradedVector {
        let mut out = GradedVector::zero(self.target);
        for (_, c) in w.homogeneous_components() {
            out.add_scaled(&self.field(&c).apply(s, a), &Scalar::one());
        }
        out
    }

    /// Lowest exponent of Y(w, z) that can act on weight `d`.
    pub fn lowest(&self, w: &GradedVector, d: Q) -> Q {
        w.homogeneous_components()
            .into_values()
            .map(|c| self.field(&c).grading().lowest(d))
            .min()
            .unwrap_or_else(Q::zero)
    }
}

/// The Fock intertwiner of type (M(1,lambda+mu); M(1,lambda) M(1,mu)).
pub fn fock(lambda: Q, mu: Q) -> IntertwinerMap {
    IntertwinerMap::new(format!("Y[{lambda},{mu}]"), lambda, mu, lambda + mu, 1, move |w| FockField::arc(w.clone(), mu))
}

/// The module map Y_N of N = M(1, mu).
pub fn module_map(mu: Q) -> IntertwinerMap {
    let mut y = fock(Q::zero(), mu);
    y.name = format!("Y_M(1,{mu})");
    y
}

/// u -> Y_T(u^1, z) on T_sigma(M(1, lambda)).
pub fn twisted_module_map(t: TwistedModule) -> IntertwinerMap {
    IntertwinerMap::new(format!("Y_T[k={},{}]", t.k, t.lambda), Q::zero(), t.lambda, t.lambda, t.k as i64, move |u| t.field(u, 1))
}

/// sum_e F_e at exponent mul * (s - q_e).
struct Composite {
    grading: Grading,
    mul: Q,
    terms: Vec<(Q, FieldRef)>,
}

impl Field for Composite {
    fn grading(&self) -> Grading {
        self.grading
    }

    fn apply_monomial(&self, s: Q, parts: &[u32]) -> GradedVector {
        let a = GradedVector::monomial(self.grading.source, parts.to_vec());
        let mut out = GradedVector::zero(self.grading.target);
        for (q, f) in &self.terms {
            out.add_scaled(&f.apply(self.mul * (s - *q), &a), &Scalar::one());
        }
        out
    }
}

fn homogeneous_weight(w: &GradedVector) -> Q {
    w.weight().unwrap_or_else(|| {
        assert!(w.is_zero(), "transport of a non-homogeneous vector");
        ground_weight(w.charge())
    })
}

/// pi: Ybar(w^1, z) = Y(Delta_k(z) w, z^{1/k}).
pub fn transport_forward(k: u32, y: &IntertwinerMap) -> IntertwinerMap {
    assert_eq!(y.scale, 1, "forward transport starts from an untwisted intertwiner");
    let base = y.clone();
    IntertwinerMap::new(format!("pi({})", y.name), y.input, y.source, y.target, k as i64, move |w| {
        let terms = apply_delta(k, w, false).homogeneous_terms().into_iter().map(|(q, _, x)| (q, base.field(&x))).collect();
        let grading = Grading { scale: k as i64, weight: homogeneous_weight(w), source: base.source, target: base.target };
        Cached::new(Arc::new(Composite { grading, mul: Q::from_integer(k as i64), terms }))
    })
}

/// pi^{-1}: Y(w, z) = Ybar((Phi_k(z) w)^1, z^k).
pub fn transport_inverse(k: u32, ybar: &IntertwinerMap) -> IntertwinerMap {
    assert_eq!(ybar.scale, k as i64, "inverse transport starts from a twisted intertwiner");
    let bar = ybar.clone();
    IntertwinerMap::new(format!("pi^-1({})", ybar.name), ybar.input, ybar.source, ybar.target, 1, move |w| {
        let terms = apply_phi(k, w).homogeneous_terms().into_iter().map(|(q, _, x)| (q, bar.field(&x))).collect();
        let grading = Grading { scale: 1, weight: homogeneous_weight(w), source: bar.source, target: bar.target };
        Cached::new(Arc::new(Composite { grading, mul: Q::new(1, k as i64), terms }))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn vacuum_transports_to_identity() {
        for k in 2..=3 {
            let y = transport_forward(k, &module_map(q(1, 3)));
            let a = GradedVector::monomial(q(1, 3), vec![2, 1]);
            assert_eq!(y.apply(&GradedVector::vacuum(), q(0, 1), &a), a);
            assert!(y.apply(&GradedVector::vacuum(), q(1, k as i64), &a).is_zero());
        }
    }

    #[test]
    fn forward_support() {
        // Exponents of Ybar(hw^1, z) on hw lie in (lambda mu + Z)/k + (1/k - 1) lambda^2/2.
        let (lambda, mu, k) = (q(1, 2), q(1, 3), 2i64);
        let y = transport_forward(k as u32, &fock(lambda, mu));
        let hw = GradedVector::hw(lambda);
        let shift = (lambda * mu) / k + (q(1, k) - 1) * lambda * lambda / 2;
        let lo = y.lowest(&hw, mu * mu / 2);
        let mut found = 0;
        for j in 0..24 {
            let s = lo + q(j, 2 * k * 3);
            let v = y.apply(&hw, s, &GradedVector::hw(mu));
            let on_lattice = ((s - shift) * k).is_integer();
            if !on_lattice {
                assert!(v.is_zero(), "s={s}");
            } else if !v.is_zero() {
                found += 1;
            }
        }
        assert!(found > 3);
    }
}
