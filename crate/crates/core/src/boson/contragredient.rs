//! The contragredient action on restricted duals, from
//! <Y'(v, z) f, u> = <f, Y(e^{z L(1)} (-z^{-2})^{L(0)} v, z^{-1}) u>.
//! Dual vectors are written in the dual monomial basis.




use super::fields::vertex_operator;
use super::fock::{module_basis, monomial_degree, GradedVector};
use super::virasoro::virasoro;
use crate::exact::{Scalar, Q};
use crate::field::Field;

/// Coefficient of z^s of Y_{M'}(v, z) applied to the dual vector `f` of
/// M(1, lambda)', for `v` homogeneous of integer weight in M(1).
pub fn contragredient_apply(v: &GradedVector, s: Q, f: &GradedVector) -> GradedVector {
    let lambda = f.charge();
    let mut out = GradedVector::zero(lambda);
    let Some(n) = v.weight() else { return out };
    assert!(n.is_integer(), "contragredient needs integer weight");
    let n = n.to_integer();
    // L(1)^j v / j!
    let mut lv = Vec::new();
    let mut cur = v.clone();
    let mut fact = Q::from_integer(1);
    for j in 0..=n.max(0) {
        if j > 0 {
            cur = virasoro(1, &cur);
            fact *= Q::from_integer(j);
        }
        if cur.is_zero() {
            break;
        }
        lv.push(cur.scale(&Scalar::from_q(Q::from_integer(1) / fact)));
    }
    let sign = if n % 2 == 0 { Scalar::one() } else { Scalar::from_int(-1) };
    for (fp, fc) in f.terms() {
        let df = monomial_degree(lambda, fp);
        // <g, u> is nonzero only for weight(u) = df + n + s
        let du = df + Q::from_integer(n) + s;
        if du < monomial_degree(lambda, &[]) || !(du - monomial_degree(lambda, &[])).is_integer() {
            continue;
        }
        for m in module_basis(lambda, du) {
            if m.degree() != du {
                continue;
            }
            let u = GradedVector::from_monomial(&m);
            let mut pairing = Scalar::zero();
            for (j, w) in lv.iter().enumerate() {
                // z^{-2n+j} (z^{-1})^p = z^s  =>  p = j - 2n - s
                let p = Q::from_integer(j as i64 - 2 * n) - s;
                let y = vertex_operator(w, lambda).apply(p, &u);
                pairing += &y.coeff(fp);
            }
            if !pairing.is_zero() {
                out.add_term(m.parts.clone(), &(&(&pairing * &sign) * fc));
            }
        }
    }
    out
}
