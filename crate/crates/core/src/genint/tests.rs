use super::*;
use crate::boson::GradedVector;
use crate::exact::q;
use crate::transport::{fock, module_map, transport_forward, IntertwinerMap};
use crate::twisted::TensorVector;

fn ybar(k: u32) -> IntertwinerMap {
    transport_forward(k, &fock(q(1, 2), q(1, 3)))
}

fn alpha(parts: Vec<u32>) -> GradedVector {
    GradedVector::monomial(q(0, 1), parts)
}

fn hw() -> GradedVector {
    GradedVector::hw(q(1, 2))
}

#[test]
fn vacuum_acts_as_identity() {
    let phi = GenInt::from_intertwiner(&ybar(2), &hw());
    let c = verify_vacuum_identity(&phi, -3..=2, 2);
    assert!(c.passed, "{c:?}");
}

#[test]
fn module_map_of_vacuum_is_identity() {
    let t = transport_forward(2, &module_map(q(1, 3)));
    let phi = GenInt::from_intertwiner(&t, &GradedVector::vacuum());
    let a = GradedVector::monomial(q(1, 3), vec![1]);
    assert_eq!(phi.apply(q(0, 1), &a), a);
    assert!(phi.apply(q(-1, 1), &a).is_zero());
}

#[test]
fn other_slots_are_vacuum_like() {
    for (u, w) in [(alpha(vec![1]), hw()), (GradedVector::omega(), hw()), (alpha(vec![1]), GradedVector::monomial(q(1, 2), vec![1]))] {
        let c = verify_slot_action(&ybar(2), &u, 2, &w, 0..=2, 2);
        assert!(c.passed, "{c:?}");
    }
}

#[test]
fn first_slot_is_the_homomorphism() {
    let c = verify_slot_action(&ybar(2), &alpha(vec![1]), 1, &hw(), -2..=1, 2);
    assert!(c.passed, "{c:?}");
}

#[test]
fn truncation_is_exact() {
    let phi = GenInt::from_intertwiner(&ybar(2), &hw());
    let u = TensorVector::single(2, &GradedVector::omega(), 2);
    for n in -1..=2 {
        let c = verify_truncation(&u, n, &phi, 4, 2);
        assert!(c.passed, "{c:?}");
    }
}

#[test]
fn recorded_order_commutes() {
    let phi = GenInt::from_intertwiner(&ybar(2), &hw());
    for slot in 1..=2 {
        let c = verify_weak_commutativity(&TensorVector::single(2, &alpha(vec![1]), slot), &phi, 2);
        assert!(c.passed, "{c:?}");
    }
}

#[test]
fn substitution_identity() {
    let phi = GenInt::from_intertwiner(&ybar(2), &hw());
    let u = TensorVector::single(2, &alpha(vec![1]), 1);
    for r in 0..2 {
        let c = verify_technical_one(&u, r, &phi, 2);
        assert!(c.passed, "{c:?}");
    }
}

#[test]
fn modes_satisfy_derivative_property() {
    let phi = GenInt::from_intertwiner(&ybar(2), &hw());
    let v = TensorVector::single(2, &alpha(vec![1]), 2);
    let c = verify_h_derivative(&v, &phi, -1..=1, 2);
    assert!(c.passed, "{c:?}");
}

#[test]
fn weak_associativity_in_one_slot() {
    let phi = GenInt::from_intertwiner(&ybar(2), &hw());
    let c = verify_h_associativity(&alpha(vec![1]), &alpha(vec![1]), 2, &phi, 1);
    assert!(c.passed, "{c:?}");
}

#[test]
fn first_slot_does_not_vanish() {
    let phi = GenInt::from_intertwiner(&ybar(2), &hw());
    let psi = apply_yh(&TensorVector::single(2, &alpha(vec![1]), 1), 0, &phi);
    let a = GradedVector::hw(q(1, 3));
    let t = psi.field().grading().exponents(crate::boson::ground_weight(q(1, 3)), 0)[0];
    // alpha(0) acts on |1/2> by 1/2
    assert_eq!(psi.apply(t, &a), phi.apply(t, &a).scale(&crate::exact::Scalar::from_q(q(1, 2))));
    assert!(!psi.apply(t, &a).is_zero());
}
