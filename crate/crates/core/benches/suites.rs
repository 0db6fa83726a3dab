//! Sequential against rayon-parallel execution of the heavier suites.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use orbifusion::boson::GradedVector;
use orbifusion::exact::q;
use orbifusion::exec::Execution;
use orbifusion::fusion::{verify_fusion_table, FusionRing};
use orbifusion::transport::{compare_maps, fock, transport_forward, transport_inverse};
use orbifusion::twisted::{verify_twisted_jacobi, JacobiWindow, TwistedModule};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn fusion_tables(c: &mut Criterion) {
    let ring = FusionRing::shipped("ising").unwrap();
    let mut g = c.benchmark_group("fusion_table_ising_k3");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| verify_fusion_table(&ring, 3, exec)));
    }
    g.finish();
}

fn jacobi(c: &mut Criterion) {
    let t = TwistedModule::new(2, q(1, 2));
    let u = GradedVector::omega();
    let v = GradedVector::monomial(q(0, 1), vec![1]);
    let mut g = c.benchmark_group("twisted_jacobi_k2_cutoff3");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| verify_twisted_jacobi(&t, &u, 1, &v, 2, JacobiWindow::new(3), exec))
        });
    }
    g.finish();
}

fn transport_round_trip(c: &mut Criterion) {
    let y = fock(q(1, 2), q(1, 3));
    let ws = [GradedVector::hw(q(1, 2)), GradedVector::monomial(q(1, 2), vec![1])];
    let mut g = c.benchmark_group("transport_round_trip_k2");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                let back = transport_inverse(2, &transport_forward(2, &y));
                compare_maps(&back, &y, &ws, 1, 10, exec)
            })
        });
    }
    g.finish();
}

criterion_group!(benches, fusion_tables, jacobi, transport_round_trip);
criterion_main!(benches);
