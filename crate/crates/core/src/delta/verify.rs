//! Exact checks of the Delta_k identities on the free boson.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Zero};

use super::image::{apply_delta, apply_phi, DeltaImage};
use crate::boson::fock::ground_weight;
use crate::boson::{vertex_operator, virasoro, GradedVector, CENTRAL_CHARGE};
use crate::exact::{big, binom_i, binom_q, PowerSeries, Rational, Scalar, Q};
use crate::field::Field;
use crate::report::CheckResult;

pub type VectorSeries = BTreeMap<Q, GradedVector>;

fn add_into(s: &mut VectorSeries, e: Q, v: &GradedVector, c: &Scalar) {
    if v.is_zero() || c.is_zero() {
        return;
    }
    let entry = s.entry(e).or_insert_with(|| GradedVector::zero(v.charge()));
    entry.add_scaled(v, c);
    if entry.is_zero() {
        s.remove(&e);
    }
}

/// Compares two series at every exponent present in either.
pub fn compare_series(check: &mut CheckResult, label: &str, lhs: &VectorSeries, rhs: &VectorSeries, charge: Q) {
    let keys: BTreeSet<Q> = lhs.keys().chain(rhs.keys()).copied().collect();
    let zero = GradedVector::zero(charge);
    if keys.is_empty() {
        check.compare(|| label.to_string(), &zero, &zero);
    }
    for e in keys {
        let l = lhs.get(&e).unwrap_or(&zero);
        let r = rhs.get(&e).unwrap_or(&zero);
        check.compare(|| format!("{label} at exponent {e}"), l, r);
    }
}

fn derivative(d: &DeltaImage) -> VectorSeries {
    let mut out = VectorSeries::new();
    for (e, x) in &d.entries {
        add_into(&mut out, *e - 1, x, &Scalar::from_q(*e));
    }
    out
}

/// Delta_k(z) omega = k^{-2} z^{2(1/k-1)} omega + z^{-2} (c/24)(1 - k^{-2}) 1.
pub fn verify_delta_omega(k: u32) -> CheckResult {
    let kq = Q::from_integer(k as i64);
    let mut check = CheckResult::new(format!("delta_omega k={k}"), "all exponents");
    let got = apply_delta(k, &GradedVector::omega(), false);
    let mut expected = VectorSeries::new();
    let inv2 = Q::one() / (kq * kq);
    add_into(&mut expected, (Q::one() / kq - 1) * 2, &GradedVector::omega(), &Scalar::from_q(inv2));
    let c = Q::new(CENTRAL_CHARGE, 24) * (Q::one() - inv2);
    add_into(&mut expected, Q::from_integer(-2), &GradedVector::vacuum(), &Scalar::from_q(c));
    compare_series(&mut check, "Delta_k(z) omega", &got.entries, &expected, Q::zero());
    check
}

/// d/dz Delta_k(z) w = (1/k) sum_{i>=1} C(1-k, i) z^{-1-(i-1)/k} L(i-1) Delta_k(z) w.
pub fn verify_derivative_identity(k: u32, w: &GradedVector) -> CheckResult {
    let kq = Q::from_integer(k as i64);
    let mut check = CheckResult::new(format!("delta_derivative k={k} w={w}"), "all exponents");
    let d = apply_delta(k, w, false);
    let lhs = derivative(&d);
    let mut rhs = VectorSeries::new();
    for (e, x) in &d.entries {
        let Some(top) = x.max_degree() else { continue };
        let span = (top - ground_weight(x.charge())).floor().to_integer();
        for i in 1..=(span + 1).max(1) {
            let lx = virasoro(i - 1, x);
            let c = Scalar::from_rational(binom_i(1 - k as i64, i as u64)) * Scalar::from_q(Q::one() / kq);
            add_into(&mut rhs, *e - 1 - Q::new(i - 1, 1) / kq, &lx, &c);
        }
    }
    compare_series(&mut check, "d/dz Delta_k(z) w", &lhs, &rhs, w.charge());
    check
}

/// Delta_k(z) L(-1) w - (1/k) z^{1/k-1} L(-1) Delta_k(z) w = d/dz Delta_k(z) w.
pub fn verify_l_minus_one_bracket(k: u32, w: &GradedVector) -> CheckResult {
    let kq = Q::from_integer(k as i64);
    let mut check = CheckResult::new(format!("delta_l_minus_one k={k} w={w}"), "all exponents");
    let d = apply_delta(k, w, false);
    let mut lhs = apply_delta(k, &virasoro(-1, w), false).entries;
    let shift = Q::one() / kq - 1;
    for (e, x) in &d.entries {
        add_into(&mut lhs, *e + shift, &virasoro(-1, x), &Scalar::from_q(-Q::one() / kq));
    }
    compare_series(&mut check, "L(-1) bracket", &lhs, &derivative(&d), w.charge());
    check
}

/// h(t) with (1 + t)^{1/k} - 1 = (t/k) h(t).
fn h_series(k: u32, len: usize) -> PowerSeries {
    let kk = Rational::from_integer((k as i64).into());
    let inv = Q::new(1, k as i64);
    PowerSeries::new((0..len).map(|j| &kk * binom_q(inv, j as u64 + 1)).collect(), len)
}

/// Coefficient of z^beta on both sides of
/// Delta_k(x) Y(v, z) w = Y(Delta_k(x+z) v, (x+z)^{1/k} - x^{1/k}) Delta_k(x) w,
/// as x-series, for the lowest `cutoff + 1` powers of z.
pub fn verify_delta_conjugation(k: u32, v: &GradedVector, w: &GradedVector, cutoff: i64) -> CheckResult {
    conjugation(k, v, w, cutoff, false)
}

/// The same for Phi_k(x) Y(v, z) w = Y(Phi_k(x+z) v, (x+z)^k - x^k) Phi_k(x) w.
pub fn verify_phi_conjugation(k: u32, v: &GradedVector, w: &GradedVector, cutoff: i64) -> CheckResult {
    conjugation(k, v, w, cutoff, true)
}

/// g(t) with (1 + t)^k - 1 = k t g(t).
fn g_series(k: u32, len: usize) -> PowerSeries {
    let kk = Rational::from_integer((k as i64).into());
    PowerSeries::new((0..len).map(|j| binom_i(k as i64, j as u64 + 1) / &kk).collect(), len)
}

fn conjugation(k: u32, v: &GradedVector, w: &GradedVector, cutoff: i64, phi: bool) -> CheckResult {
    assert!(v.charge().is_zero(), "v must lie in M(1)");
    let kq = Q::from_integer(k as i64);
    let lambda = w.charge();
    let image = |x: &GradedVector| if phi { apply_phi(k, x) } else { apply_delta(k, x, false) };
    let comps: Vec<GradedVector> = v.homogeneous_components().into_values().collect();
    let wtop = w.max_degree().unwrap_or(ground_weight(lambda));
    let beta_lo = comps
        .iter()
        .map(|c| vertex_operator(c, lambda).grading().lowest(wtop).floor().to_integer())
        .min()
        .unwrap_or(0);
    let beta_hi = beta_lo + cutoff;
    let name = if phi { "phi_conjugation" } else { "delta_conjugation" };
    let mut check = CheckResult::new(format!("{name} k={k} v={v} w={w}"), format!("z^[{beta_lo},{beta_hi}]"));

    let dw = image(w).homogeneous_terms();
    let dv = image(v).homogeneous_terms();
    let s_lo = dv
        .iter()
        .flat_map(|(_, _, vf)| dw.iter().map(move |(_, wt, _)| vertex_operator(vf, lambda).grading().lowest(*wt)))
        .min()
        .map_or(beta_lo, |s| s.floor().to_integer());
    let len = (beta_hi - s_lo + 1).max(1) as usize;
    // The new variable is c x^{e} z (1 + O(z/x)) with unit series `base`.
    let (base, c_scale, x_shift) = if phi {
        (g_series(k, len), Scalar::from_int(k as i64), kq - 1)
    } else {
        (h_series(k, len), Scalar::from_q(Q::one() / kq), Q::one() / kq - 1)
    };
    let mut powers: HashMap<i64, PowerSeries> = HashMap::new();

    for beta in beta_lo..=beta_hi {
        let bq = Q::from_integer(beta);
        let mut inner = GradedVector::zero(lambda);
        for c in &comps {
            inner.add_scaled(&vertex_operator(c, lambda).apply(bq, w), &Scalar::one());
        }
        let lhs = image(&inner).entries;

        let mut rhs = VectorSeries::new();
        for (r_f, _, v_f) in &dv {
            let y = vertex_operator(v_f, lambda);
            for (q_e, _, w_e) in &dw {
                for s in s_lo..=beta {
                    let out = y.apply(Q::from_integer(s), w_e);
                    if out.is_zero() {
                        continue;
                    }
                    let hs = powers.entry(s).or_insert_with(|| base.pow(&big(Q::from_integer(s))));
                    let cs = c_scale.pow(s);
                    for a in 0..=(beta - s) {
                        let b = beta - s - a;
                        let c = binom_q(*r_f, a as u64) * &hs.coeffs[b as usize];
                        if c.is_zero() {
                            continue;
                        }
                        let e = *r_f - a + x_shift * s - b + *q_e;
                        add_into(&mut rhs, e, &out, &(Scalar::from_rational(c) * &cs));
                    }
                }
            }
        }
        compare_series(&mut check, &format!("z^{beta}"), &lhs, &rhs, lambda);
    }
    check
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn samples() -> Vec<GradedVector> {
        vec![
            GradedVector::vacuum(),
            GradedVector::monomial(q(0, 1), vec![1]),
            GradedVector::omega(),
            GradedVector::monomial(q(0, 1), vec![1, 1]),
        ]
    }

    #[test]
    fn omega_identity() {
        for k in 1..=4 {
            let c = verify_delta_omega(k).finish();
            assert!(c.passed, "{c:?}");
        }
    }

    #[test]
    fn derivative_and_bracket() {
        for k in 2..=3 {
            for w in samples().into_iter().chain([GradedVector::hw(q(1, 2)), GradedVector::monomial(q(1, 2), vec![2, 1])]) {
                let c = verify_derivative_identity(k, &w).finish();
                assert!(c.passed, "{c:?}");
                let c = verify_l_minus_one_bracket(k, &w).finish();
                assert!(c.passed, "{c:?}");
            }
        }
    }

    #[test]
    fn conjugation_examples() {
        let a1 = GradedVector::monomial(q(0, 1), vec![1]);
        let cases = [
            (2, GradedVector::vacuum(), GradedVector::hw(q(1, 2)), 4),
            (2, a1.clone(), GradedVector::hw(q(1, 2)), 4),
            (3, GradedVector::omega(), GradedVector::vacuum(), 3),
            (2, GradedVector::omega(), GradedVector::monomial(q(1, 2), vec![1]), 3),
        ];
        for (k, v, w, cut) in cases {
            let c = verify_delta_conjugation(k, &v, &w, cut).finish();
            assert!(c.passed, "{c:?}");
            let c = verify_phi_conjugation(k, &v, &w, cut).finish();
            assert!(c.passed, "{c:?}");
        }
    }
}
