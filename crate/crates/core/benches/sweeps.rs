use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use upn_core::exec::Execution;
use upn_core::standard::{synthesize_routed, verify_circuit_with, OracleKind, PermSelection};
use upn_core::superseq::{check_completeness, construct, CheckMode, Strategy, EXHAUSTIVE_LIMIT};
use upn_core::switchnet::{build_benes, build_triangular, enumerate_orderings_with};

const POLICIES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn completeness(c: &mut Criterion) {
    let mut g = c.benchmark_group("is_complete");
    for n in [5, 6] {
        let w = construct(n, Strategy::Zigzag).unwrap();
        for (name, exec) in POLICIES {
            g.bench_with_input(BenchmarkId::new(name, n), &w, |b, w| {
                b.iter(|| {
                    check_completeness(black_box(w), CheckMode::Exhaustive, EXHAUSTIVE_LIMIT, exec)
                        .unwrap()
                })
            });
        }
    }
    g.finish();
}

fn verification(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_circuit");
    g.sample_size(10);
    let circuit = synthesize_routed(construct(6, Strategy::Zigzag).unwrap()).unwrap();
    for (name, exec) in POLICIES {
        g.bench_function(name, |b| {
            b.iter(|| {
                verify_circuit_with(&circuit, PermSelection::All, OracleKind::Phase, exec).unwrap()
            })
        });
    }
    g.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_orderings");
    g.sample_size(10);
    let nets = [("benes5", build_benes(5).unwrap()), ("triangular6", build_triangular(6).unwrap())];
    for (label, net) in &nets {
        for (name, exec) in POLICIES {
            g.bench_with_input(BenchmarkId::new(name, label), net, |b, net| {
                b.iter(|| enumerate_orderings_with(net, exec).unwrap())
            });
        }
    }
    g.finish();
}

criterion_group!(benches, completeness, verification, enumeration);
criterion_main!(benches);
