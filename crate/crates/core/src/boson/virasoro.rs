//! Virasoro modes of the c = 1 boson, from the oscillator formula
//! L(n) = (1/2) sum_m :alpha(m) alpha(n - m):.

use super::fock::GradedVector;
use crate::exact::{Scalar, Q};

pub const CENTRAL_CHARGE: i64 = 1;

pub fn virasoro(n: i64, w: &GradedVector) -> GradedVector {
    let lambda = w.charge();
    let mut out = GradedVector::zero(lambda);
    if w.is_zero() {
        return out;
    }
    let half = Scalar::from_q(Q::new(1, 2));
    let one = Scalar::one();
    let top = w.max_part() as i64;
    match n.cmp(&0) {
        std::cmp::Ordering::Greater => {
            for m in 1..n {
                out.add_scaled(&w.alpha(n - m).alpha(m), &half);
            }
            out.add_scaled(&w.alpha(n), &Scalar::from_q(lambda));
            for m in 1..=top {
                out.add_scaled(&w.alpha(n + m).alpha(-m), &one);
            }
        }
        std::cmp::Ordering::Equal => {
            out.add_scaled(w, &Scalar::from_q(lambda * lambda / Q::from_integer(2)));
            for m in 1..=top {
                out.add_scaled(&w.alpha(m).alpha(-m), &one);
            }
        }
        std::cmp::Ordering::Less => {
            for m in 1..-n {
                out.add_scaled(&w.alpha(-m).alpha(n + m), &half);
            }
            out.add_scaled(&w.alpha(n), &Scalar::from_q(lambda));
            for m in 1..=top {
                out.add_scaled(&w.alpha(m).alpha(n - m), &one);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boson::fields::vertex_operator;
    use crate::boson::fock::module_basis;
    use crate::exact::q;
    use crate::field::Field;

    #[test]
    fn examples() {
        let a2 = GradedVector::monomial(q(0, 1), vec![2]);
        assert_eq!(virasoro(0, &a2), a2.scale(&Scalar::from_int(2)));
        let lam = q(2, 3);
        let a1 = GradedVector::monomial(lam, vec![1]);
        assert_eq!(virasoro(1, &a1), GradedVector::hw(lam).scale(&Scalar::from_q(lam)));
        assert!(virasoro(-1, &GradedVector::vacuum()).is_zero());
    }

    #[test]
    fn matches_omega_field_and_weights() {
        let om = GradedVector::omega();
        for lam in [q(0, 1), q(1, 2), q(-1, 3)] {
            let y = vertex_operator(&om, lam);
            for m in module_basis(lam, lam * lam / 2 + 4) {
                let u = GradedVector::from_monomial(&m);
                assert_eq!(virasoro(0, &u), u.scale(&Scalar::from_q(m.degree())));
                for n in -3i64..=4 {
                    assert_eq!(virasoro(n, &u), y.apply(Q::from_integer(-n - 2), &u), "n={n} u={u}");
                }
            }
        }
    }

    #[test]
    fn virasoro_relations() {
        // [L(m), L(n)] = (m - n) L(m + n) + (m^3 - m)/12 delta_{m+n,0}
        let lam = q(1, 2);
        for m in module_basis(lam, lam * lam / 2 + 3) {
            let u = GradedVector::from_monomial(&m);
            for a in -3i64..=3 {
                for b in -3i64..=3 {
                    let lhs = virasoro(a, &virasoro(b, &u)).sub(&virasoro(b, &virasoro(a, &u)));
                    let mut rhs = virasoro(a + b, &u).scale(&Scalar::from_int(a - b));
                    if a + b == 0 {
                        rhs.add_scaled(&u, &Scalar::from_q(Q::new(a * a * a - a, 12)));
                    }
                    assert_eq!(lhs, rhs, "m={a} n={b}");
                }
            }
        }
    }
}
