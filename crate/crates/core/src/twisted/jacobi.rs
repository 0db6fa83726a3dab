//! Weak commutativity and weak associativity for T_sigma(W), which together
//! are equivalent to the twisted Jacobi identity.
//!
//! Windows: `cutoff` bounds the W-weight excess (over the ground weight) of
//! test vectors and of outputs, and the number of 1/k-steps scanned in free
//! exponents.

use num_traits::Zero;

use super::module::TwistedModule;
use crate::boson::{mode, module_basis, singular_order, virasoro, GradedVector, CENTRAL_CHARGE};
use crate::exact::{binom_i, binom_q, sign, Scalar, Q};
use crate::exec::Execution;
use crate::field::{Field, FieldRef};
use crate::report::CheckResult;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JacobiWindow {
    pub cutoff: i64,
    /// Largest power of z0 compared in the associativity check.
    pub z0_max: i64,
}

impl JacobiWindow {
    pub fn new(cutoff: i64) -> Self {
        JacobiWindow { cutoff, z0_max: cutoff }
    }

    fn describe(&self) -> String {
        format!("weight excess <= {}, z0^[0,{}]", self.cutoff, self.z0_max)
    }
}

fn basis(t: &TwistedModule, cutoff: i64) -> Vec<GradedVector> {
    module_basis(t.lambda, t.ground() + cutoff).iter().map(GradedVector::from_monomial).collect()
}

/// sum_l C(m,l)(-1)^l F_{alpha-m+l} G_{beta-l} a
fn product_coeff(f: &FieldRef, g: &FieldRef, m: i64, alpha: Q, beta: Q, a: &GradedVector) -> GradedVector {
    let mut out = GradedVector::zero(a.charge());
    for l in 0..=m {
        let inner = g.apply(beta - l, a);
        if inner.is_zero() {
            continue;
        }
        out.add_scaled(&f.apply(alpha - m + l, &inner), &Scalar::from_rational(binom_i(m, l as u64) * sign(l)));
    }
    out
}

fn weight(u: &GradedVector) -> Q {
    u.weight().unwrap_or_else(|| panic!("jacobi checks need homogeneous vectors, got {u}"))
}

/// Coefficients of (z1-z2)^m [Y_T(u^i,z1), Y_T(v^j,z2)] a, which must vanish.
pub fn verify_twisted_commutator(
    t: &TwistedModule,
    u: &GradedVector,
    i: usize,
    v: &GradedVector,
    j: usize,
    m: i64,
    window: JacobiWindow,
    exec: Execution,
) -> CheckResult {
    let kq = Q::from_integer(t.k as i64);
    let step = Q::new(1, t.k as i64);
    let g = t.ground();
    let (wu, wv) = (weight(u), weight(v));
    let fu = t.field(u, i);
    let fv = t.field(v, j);
    let vectors = basis(t, window.cutoff);
    let jobs = exec.map(&vectors, |a| {
        let mut check = CheckResult::new("", "");
        let d_a = a.max_degree().unwrap();
        let lv = fv.grading().lowest(d_a);
        for jb in 0..=window.cutoff {
            let beta = lv + step * jb;
            for out in 0..=window.cutoff {
                let alpha = (g + out - d_a) / kq + m - wu - wv - beta;
                let uv = product_coeff(&fu, &fv, m, alpha, beta, a);
                let mut vu = GradedVector::zero(t.lambda);
                for l in 0..=m {
                    let inner = fu.apply(alpha - m + l, a);
                    if inner.is_zero() {
                        continue;
                    }
                    vu.add_scaled(&fv.apply(beta - l, &inner), &Scalar::from_rational(binom_i(m, l as u64) * sign(l)));
                }
                check.compare(|| format!("z1^{alpha} z2^{beta} on {a}"), &uv, &vu);
            }
        }
        check
    });
    let mut out = CheckResult::new(
        format!("twisted_commutativity m={m} k={} lambda={} u={u}^{i} v={v}^{j}", t.k, t.lambda),
        window.describe(),
    );
    jobs.into_iter().for_each(|c| out.merge(c));
    out
}

/// Weak commutativity with m = 1 + max{n : u_n v != 0} (any slots) and, for
/// insertions in one slot, weak associativity
/// z0^m Y_T((Y(u,z0)v)^i, z2) = (z1-z2)^m Y_T(u^i,z1) Y_T(v^i,z2)|_{z1^{1/k}=(z2+z0)^{1/k}}.
pub fn verify_twisted_jacobi(
    t: &TwistedModule,
    u: &GradedVector,
    i: usize,
    v: &GradedVector,
    j: usize,
    window: JacobiWindow,
    exec: Execution,
) -> Vec<CheckResult> {
    let m = singular_order(u, v);
    let mut out = vec![verify_twisted_commutator(t, u, i, v, j, m, window, exec)];
    let u_vac = u.coeff(&[]).is_one() && u.weight() == Some(Q::zero());
    let v_vac = v.coeff(&[]).is_one() && v.weight() == Some(Q::zero());
    if i == j || u_vac || v_vac {
        let slot = if u_vac { j } else { i };
        out.push(verify_twisted_associativity(t, u, v, slot, m, window, exec));
    }
    out
}

fn verify_twisted_associativity(
    t: &TwistedModule,
    u: &GradedVector,
    v: &GradedVector,
    slot: usize,
    m: i64,
    window: JacobiWindow,
    exec: Execution,
) -> CheckResult {
    let kq = Q::from_integer(t.k as i64);
    let step = Q::new(1, t.k as i64);
    let g = t.ground();
    let (wu, wv) = (weight(u), weight(v));
    let fu = t.field(u, slot);
    let fv = t.field(v, slot);
    let vectors = basis(t, window.cutoff);
    let jobs = exec.map(&vectors, |a| {
        let mut check = CheckResult::new("", "");
        let d_a = a.max_degree().unwrap();
        let lu = fu.grading().lowest(d_a);
        let lv = fv.grading().lowest(d_a);
        for c in 0..=window.z0_max {
            let n = m - 1 - c;
            let p = mode(u, n, v);
            let wp = wu + wv - n - 1;
            let fp = (!p.is_zero()).then(|| t.field(&p, slot));
            for out in 0..=window.cutoff {
                let d = (g + out - d_a) / kq - wp;
                let lhs = fp.as_ref().map_or_else(|| GradedVector::zero(t.lambda), |f| f.apply(d, a));
                let mut rhs = GradedVector::zero(t.lambda);
                let mut alpha = lu;
                while alpha <= d + c - lv {
                    let coeff = binom_q(alpha, c as u64);
                    if !coeff.is_zero() {
                        let f = product_coeff(&fu, &fv, m, alpha, d + c - alpha, a);
                        rhs.add_scaled(&f, &Scalar::from_rational(coeff));
                    }
                    alpha += step;
                }
                check.compare(|| format!("z0^{c} z2^{d} on {a}"), &lhs, &rhs);
            }
        }
        check
    });
    let mut out = CheckResult::new(
        format!("twisted_associativity m={m} k={} lambda={} u={u}^{slot} v={v}^{slot}", t.k, t.lambda),
        window.describe(),
    );
    jobs.into_iter().for_each(|c| out.merge(c));
    out
}

/// L_T(n) = (1/k) L(nk) + delta_{n,0} (c/24)(k - 1/k) on weights up to
/// ground + `excess`, for n in [-2, 2].
pub fn verify_virasoro_formula(t: &TwistedModule, excess: i64) -> CheckResult {
    let kq = Q::from_integer(t.k as i64);
    let mut check = CheckResult::new(format!("twisted_virasoro k={} lambda={}", t.k, t.lambda), format!("n in [-2,2], weight excess <= {excess}"));
    let shift = Q::new(CENTRAL_CHARGE, 24) * (kq - Q::from_integer(1) / kq);
    for a in basis(t, excess) {
        for n in -2i64..=2 {
            let got = t.virasoro(n, &a);
            let mut want = virasoro(n * t.k as i64, &a).scale(&Scalar::from_q(Q::from_integer(1) / kq));
            if n == 0 {
                want.add_scaled(&a, &Scalar::from_q(shift));
            }
            check.compare(|| format!("L_T({n}) on {a}"), &got, &want);
        }
    }
    check
}
