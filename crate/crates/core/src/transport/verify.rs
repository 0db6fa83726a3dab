//! Coefficientwise certification of transport round trips, the commutator
//! formula, weak associativity and the L(-1)-derivative property.

use num_traits::Zero;

use super::maps::IntertwinerMap;
use crate::boson::fock::ground_weight;
use crate::boson::{mode, module_basis, singular_order, vertex_operator, virasoro, GradedVector};
use crate::exact::{binom_i, Scalar, Q};
use crate::exec::Execution;
use crate::field::Field;
use crate::report::CheckResult;

fn basis(charge: Q, excess: i64) -> Vec<GradedVector> {
    module_basis(charge, ground_weight(charge) + excess).iter().map(GradedVector::from_monomial).collect()
}

fn degree(a: &GradedVector) -> Q {
    a.weight().expect("test vectors are homogeneous")
}

/// Compares two intertwiners of the same type at the `count` lowest
/// exponents of Y(w, z) a for every w in `ws` and every basis vector a of
/// the source with weight excess at most `source_excess`.
pub fn compare_maps(
    lhs: &IntertwinerMap,
    rhs: &IntertwinerMap,
    ws: &[GradedVector],
    source_excess: i64,
    count: usize,
    exec: Execution,
) -> CheckResult {
    assert_eq!((lhs.source, lhs.target, lhs.scale), (rhs.source, rhs.target, rhs.scale), "maps of different types");
    let step = Q::new(1, lhs.scale);
    let pairs: Vec<(GradedVector, GradedVector)> =
        ws.iter().flat_map(|w| basis(lhs.source, source_excess).into_iter().map(move |a| (w.clone(), a))).collect();
    let jobs = exec.map(&pairs, |(w, a)| {
        let mut check = CheckResult::new("", "");
        let lo = lhs.lowest(w, degree(a)).min(rhs.lowest(w, degree(a)));
        for j in 0..count {
            let s = lo + step * j as i64;
            check.compare(|| format!("Y({w}, z) at z^{s} on {a}"), &lhs.apply(w, s, a), &rhs.apply(w, s, a));
        }
        check
    });
    let mut out = CheckResult::new(
        format!("{} == {}", lhs.name, rhs.name),
        format!("{count} lowest exponents, source weight excess <= {source_excess}"),
    );
    jobs.into_iter().for_each(|c| out.merge(c));
    out
}

/// [Y(u,z1), Y(w,z2)] = Res_{z0} z2^{-1} delta((z1-z0)/z2) Y(Y(u,z0)w, z2)
/// coefficientwise: at z1^a z2^b the right side is
/// sum_{i>=0} C(-a-1, i) Y(u_i w)_{a+b+1+i}.
pub fn verify_transport_commutator(y: &IntertwinerMap, u: &GradedVector, w: &GradedVector, cutoff: i64) -> CheckResult {
    assert_eq!(y.scale, 1, "commutator formula for untwisted intertwiners");
    let (wu, ww) = (degree(u), degree(w));
    let y_src = vertex_operator(u, y.source);
    let y_tgt = vertex_operator(u, y.target);
    let m = singular_order(u, w);
    let modes: Vec<GradedVector> = (0..m).map(|i| mode(u, i, w)).collect();
    let g_t = ground_weight(y.target);
    let mut check = CheckResult::new(
        format!("commutator_formula {} u={u} w={w}", y.name),
        format!("source/target weight excess <= {cutoff}"),
    );
    for x in basis(y.source, cutoff) {
        let dx = degree(&x);
        let lu = y_src.grading().lowest(dx).to_integer();
        for a_exp in (lu - cutoff)..=(lu + cutoff) {
            let aq = Q::from_integer(a_exp);
            for out in 0..=cutoff {
                let b = g_t + out - dx - aq - wu - ww;
                let mut lhs = y_tgt.apply(aq, &y.apply(w, b, &x));
                lhs.add_scaled(&y.apply(w, b, &y_src.apply(aq, &x)), &Scalar::from_int(-1));
                let mut rhs = GradedVector::zero(y.target);
                for (i, ui_w) in modes.iter().enumerate() {
                    let c = binom_i(-a_exp - 1, i as u64);
                    if c.is_zero() || ui_w.is_zero() {
                        continue;
                    }
                    rhs.add_scaled(&y.apply(ui_w, aq + b + 1 + i as i64, &x), &Scalar::from_rational(c));
                }
                check.compare(|| format!("z1^{a_exp} z2^{b} on {x}"), &lhs, &rhs);
            }
        }
    }
    check
}

/// (z0+z2)^l Y(u, z0+z2) Y(w, z2) x = (z2+z0)^l Y(Y(u, z0) w, z2) x with
/// l = 1 + max{n : u_n x != 0}.
pub fn verify_intertwiner_associativity(y: &IntertwinerMap, u: &GradedVector, w: &GradedVector, cutoff: i64) -> CheckResult {
    assert_eq!(y.scale, 1);
    let (wu, ww) = (degree(u), degree(w));
    let y_tgt = vertex_operator(u, y.target);
    let g_t = ground_weight(y.target);
    let m = singular_order(u, w);
    let mut check = CheckResult::new(
        format!("intertwiner_associativity {} u={u} w={w}", y.name),
        format!("z0^[{},{cutoff}], weight excess <= {cutoff}", -m),
    );
    for x in basis(y.source, cutoff) {
        let dx = degree(&x);
        let l = singular_order(u, &x);
        let low = y.lowest(w, dx);
        for c in (-m - l)..=cutoff {
            for out in 0..=cutoff {
                let d = g_t + out - dx + l - wu - ww - c;
                let mut rhs = GradedVector::zero(y.target);
                for i in 0..=l {
                    let n = i - c - 1;
                    if n >= m {
                        continue;
                    }
                    let un_w = mode(u, n, w);
                    rhs.add_scaled(&y.apply(&un_w, d - l + i, &x), &Scalar::from_rational(binom_i(l, i as u64)));
                }
                let mut lhs = GradedVector::zero(y.target);
                let mut j = 0i64;
                while d - j >= low {
                    let inner = y.apply(w, d - j, &x);
                    if !inner.is_zero() {
                        let coeff = binom_i(c + j, j as u64);
                        let n = l - 1 - c - j;
                        lhs.add_scaled(&y_tgt.apply(Q::from_integer(-n - 1), &inner), &Scalar::from_rational(coeff));
                    }
                    j += 1;
                }
                check.compare(|| format!("z0^{c} z2^{d} on {x}"), &lhs, &rhs);
            }
        }
    }
    check
}

/// d/dz Y(w, z) = Y(L(-1) w, z): (p+1) Y(w)_{p+1} = Y(L(-1)w)_p.
pub fn verify_intertwiner_derivative(y: &IntertwinerMap, w: &GradedVector, cutoff: i64) -> CheckResult {
    assert_eq!(y.scale, 1);
    let lw = virasoro(-1, w);
    let mut check = CheckResult::new(format!("l_minus_one_derivative {} w={w}", y.name), format!("{} exponents", cutoff + 2));
    for x in basis(y.source, cutoff) {
        let lo = y.lowest(w, degree(&x)) - 1;
        for j in 0..=cutoff + 1 {
            let p = lo + j;
            let lhs = y.apply(w, p + 1, &x).scale(&Scalar::from_q(p + 1));
            let rhs = if lw.is_zero() { GradedVector::zero(y.target) } else { y.apply(&lw, p, &x) };
            check.compare(|| format!("z^{p} on {x}"), &lhs, &rhs);
        }
    }
    check
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;
    use crate::transport::{fock, module_map, transport_forward, transport_inverse, twisted_module_map};
    use crate::twisted::TwistedModule;

    #[test]
    fn module_map_round_trip() {
        let t = TwistedModule::new(2, q(1, 2));
        let direct = twisted_module_map(t);
        let transported = transport_forward(2, &module_map(q(1, 2)));
        let us = [GradedVector::monomial(q(0, 1), vec![1]), GradedVector::omega()];
        let c = compare_maps(&direct, &transported, &us, 2, 8, Execution::Parallel).finish();
        assert!(c.passed, "{c:?}");
        let back = transport_inverse(2, &direct);
        let c = compare_maps(&back, &module_map(q(1, 2)), &us, 2, 8, Execution::Parallel).finish();
        assert!(c.passed, "{c:?}");
    }

    #[test]
    fn fock_round_trip_small() {
        let (lambda, mu) = (q(1, 2), q(1, 3));
        let y = fock(lambda, mu);
        let ws = [GradedVector::hw(lambda), GradedVector::monomial(lambda, vec![1])];
        let back = transport_inverse(2, &transport_forward(2, &y));
        let c = compare_maps(&back, &y, &ws, 1, 6, Execution::Parallel).finish();
        assert!(c.passed, "{c:?}");
    }

    #[test]
    fn commutator_associativity_derivative() {
        let (lambda, mu) = (q(1, 2), q(1, 3));
        let y = fock(lambda, mu);
        let inv = transport_inverse(2, &transport_forward(2, &y));
        let a1 = GradedVector::monomial(q(0, 1), vec![1]);
        let hw = GradedVector::hw(lambda);
        for yy in [&y, &inv] {
            for (u, w) in [(GradedVector::vacuum(), hw.clone()), (a1.clone(), hw.clone()), (GradedVector::omega(), GradedVector::monomial(lambda, vec![1]))] {
                let c = verify_transport_commutator(yy, &u, &w, 2).finish();
                assert!(c.passed, "{c:?}");
                let c = verify_intertwiner_associativity(yy, &u, &w, 2).finish();
                assert!(c.passed, "{c:?}");
            }
            let c = verify_intertwiner_derivative(yy, &GradedVector::monomial(lambda, vec![1]), 3).finish();
            assert!(c.passed, "{c:?}");
        }
    }
}
