//! Sequential vs rayon execution of the group sweeps.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use padic_qubit::clebsch::coupled_basis_with;
use padic_qubit::gates::{factorize_report, factorizing_subgroup_search, rep_image, BasisChoice, ColumnPairing, RepChoice};
use padic_qubit::group::{conjugacy_classes_with, Gp};
use padic_qubit::modp::make_context;
use padic_qubit::par::Exec;
use padic_qubit::reps::{all_irreps, character_table_with, qubit_irreps};

const STRATEGIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn gp(p: u64) -> Gp {
    Gp::new(make_context(p).unwrap())
}

fn classes_and_characters(c: &mut Criterion) {
    let mut group = c.benchmark_group("character_table");
    group.sample_size(10);
    for p in [7u64, 11] {
        let g = gp(p);
        for (name, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, p), &exec, |b, &exec| b.iter(|| character_table_with(&g, exec)));
        }
    }
    group.finish();

    let mut group = c.benchmark_group("conjugacy_classes");
    group.sample_size(10);
    let g = gp(11);
    for (name, exec) in STRATEGIES {
        group.bench_with_input(BenchmarkId::new(name, 11), &exec, |b, &exec| b.iter(|| conjugacy_classes_with(&g, exec)));
    }
    group.finish();
}

fn coupled(c: &mut Criterion) {
    let mut group = c.benchmark_group("coupled_basis");
    group.sample_size(10);
    let g = gp(11);
    let irreps = all_irreps(&g);
    let q = qubit_irreps(g.ctx());
    for (name, exec) in STRATEGIES {
        group.bench_with_input(BenchmarkId::new(name, 11), &exec, |b, &exec| {
            b.iter(|| coupled_basis_with(&g, &q[0], &q[1], &irreps, exec).unwrap())
        });
    }
    group.finish();
}

fn gates(c: &mut Criterion) {
    let g = gp(3);
    let image = rep_image(&g, RepChoice::U2, BasisChoice::B38).unwrap();
    let mut group = c.benchmark_group("gates");
    for (name, exec) in STRATEGIES {
        group.bench_with_input(BenchmarkId::new("factorize", name), &exec, |b, &exec| {
            b.iter(|| factorize_report(&image, exec))
        });
        group.bench_with_input(BenchmarkId::new("subgroup_search", name), &exec, |b, &exec| {
            b.iter(|| factorizing_subgroup_search(&g, &image, ColumnPairing::Canonical, exec))
        });
    }
    group.finish();
}

criterion_group!(benches, classes_and_characters, coupled, gates);
criterion_main!(benches);
