//! The `verify` suites.

use serde_json::{json, Map, Value};

use orbifusion::boson::GradedVector;
use orbifusion::delta::{
    verify_delta_conjugation, verify_delta_omega, verify_derivative_identity, verify_l_minus_one_bracket, verify_phi_conjugation,
};
use orbifusion::exact::{q, Q};
use orbifusion::exec::Execution;
use orbifusion::genint::{verify_h_derivative, verify_slot_action, verify_technical_one, verify_vacuum_identity, GenInt};
use orbifusion::report::{CheckResult, Report};
use orbifusion::transport::{
    compare_maps, fock, module_map, transport_forward, transport_inverse, twisted_module_map, verify_intertwiner_derivative,
    verify_transport_commutator,
};
use orbifusion::twisted::{verify_twisted_jacobi, verify_virasoro_formula, JacobiWindow, TensorVector, TwistedModule};

use crate::{InputError, Outcome};

/// 1, alpha(-1)1, omega, alpha(-1)^2 1.
fn samples() -> Vec<GradedVector> {
    vec![
        GradedVector::vacuum(),
        GradedVector::monomial(q(0, 1), vec![1]),
        GradedVector::omega(),
        GradedVector::monomial(q(0, 1), vec![1, 1]),
    ]
}

pub fn run(suite: &str, k: usize, cutoff: i64, window: Option<i64>, lambda: Q, mu: Q) -> Result<Outcome, InputError> {
    if !(2..=4).contains(&k) {
        return Err(InputError(format!("verify needs 2 <= k <= 4, got {k}")));
    }
    if !(0..=8).contains(&cutoff) {
        return Err(InputError(format!("cutoff {cutoff} outside 0..=8")));
    }
    if let Some(w) = window {
        if !(1..=200).contains(&w) {
            return Err(InputError(format!("window {w} outside 1..=200")));
        }
    }
    let mut parameters = Map::new();
    parameters.insert("suite".into(), json!(suite));
    parameters.insert("k".into(), json!(k));
    parameters.insert("cutoff".into(), json!(cutoff));
    let checks = match suite {
        "delta" => delta(k as u32, cutoff),
        "jacobi" => {
            let z0_max = window.unwrap_or(cutoff);
            parameters.insert("lambda".into(), json!(lambda.to_string()));
            parameters.insert("window".into(), json!(z0_max));
            jacobi(k, lambda, JacobiWindow { cutoff, z0_max })
        }
        "transport" => {
            let count = window.unwrap_or(30) as usize;
            parameters.insert("lambda".into(), json!(lambda.to_string()));
            parameters.insert("mu".into(), json!(mu.to_string()));
            parameters.insert("window".into(), json!(count));
            transport(k as u32, lambda, mu, cutoff, count)
        }
        "genint" => {
            parameters.insert("lambda".into(), json!(lambda.to_string()));
            parameters.insert("mu".into(), json!(mu.to_string()));
            genint(k as u32, lambda, mu, cutoff)
        }
        other => return Err(InputError(format!("unknown suite {other:?}"))),
    };
    Ok(Outcome {
        command: format!("verify {suite}"),
        parameters,
        report: Report::from_iter(checks),
        data: Value::Null,
        text: Vec::new(),
    })
}

fn delta(k: u32, cutoff: i64) -> Vec<CheckResult> {
    let mut checks = vec![verify_delta_omega(k)];
    for w in samples() {
        checks.push(verify_derivative_identity(k, &w));
        checks.push(verify_l_minus_one_bracket(k, &w));
    }
    let w = GradedVector::hw(q(1, 2));
    for v in samples().iter().skip(1) {
        checks.push(verify_delta_conjugation(k, v, &w, cutoff));
        checks.push(verify_phi_conjugation(k, v, &w, cutoff));
    }
    checks
}

fn jacobi(k: usize, lambda: Q, window: JacobiWindow) -> Vec<CheckResult> {
    let t = TwistedModule::new(k, lambda);
    let mut checks = vec![verify_virasoro_formula(&t, window.cutoff.min(4))];
    for u in samples() {
        for v in samples() {
            for i in 1..=k {
                for j in 1..=k {
                    checks.extend(verify_twisted_jacobi(&t, &u, i, &v, j, window, Execution::Parallel));
                }
            }
        }
    }
    checks
}

fn transport(k: u32, lambda: Q, mu: Q, cutoff: i64, count: usize) -> Vec<CheckResult> {
    let exec = Execution::Parallel;
    let y = fock(lambda, mu);
    let ybar = transport_forward(k, &y);
    let ws = [GradedVector::hw(lambda), GradedVector::monomial(lambda, vec![1])];
    let us: Vec<GradedVector> = samples().into_iter().skip(1).collect();
    let t = TwistedModule::new(k as usize, mu);
    let mut checks = vec![
        compare_maps(&transport_inverse(k, &ybar), &y, &ws, 1, count, exec),
        compare_maps(&transport_forward(k, &transport_inverse(k, &ybar)), &ybar, &ws, 1, count, exec),
        compare_maps(&twisted_module_map(t), &transport_forward(k, &module_map(mu)), &us, 1, count, exec),
    ];
    for w in &ws {
        checks.push(verify_intertwiner_derivative(&y, w, cutoff));
        for u in &us {
            checks.push(verify_transport_commutator(&y, u, w, cutoff));
            checks.push(verify_phi_conjugation(k, u, w, cutoff));
        }
    }
    checks
}

fn genint(k: u32, lambda: Q, mu: Q, cutoff: i64) -> Vec<CheckResult> {
    let ybar = transport_forward(k, &fock(lambda, mu));
    let hw = GradedVector::hw(lambda);
    let phi = GenInt::from_intertwiner(&ybar, &hw);
    let ku = k as usize;
    let a1 = GradedVector::monomial(q(0, 1), vec![1]);
    let mut checks = vec![verify_vacuum_identity(&phi, -3..=2, cutoff)];
    for u in samples().iter().skip(1) {
        for w in [hw.clone(), GradedVector::monomial(lambda, vec![1])] {
            for slot in 1..=ku {
                checks.push(verify_slot_action(&ybar, u, slot, &w, 0..=3, cutoff));
            }
        }
    }
    for u in [TensorVector::single(ku, &a1, 1), TensorVector::single(ku, &GradedVector::omega(), 2)] {
        for r in 0..k as i64 {
            checks.push(verify_technical_one(&u, r, &phi, cutoff));
        }
        checks.push(verify_h_derivative(&u, &phi, -1..=1, cutoff));
    }
    checks
}
