use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use strucalg::bch::{BchGroup, CheckMode};
use strucalg::constructions::{heisenberg, matrix_lie, truncated_poly};
use strucalg::derivations::derivation_space_with;
use strucalg::{Execution, FieldSpec};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn axioms(c: &mut Criterion) {
    let f = FieldSpec::prime(5).unwrap();
    let algebras = [("gl3_gf5", matrix_lie(&f, 3).unwrap().algebra), ("trunc6_gf5", truncated_poly(&f, 6).unwrap().algebra)];
    let mut group = c.benchmark_group("check_axioms");
    for (name, a) in &algebras {
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(mode, name), a, |b, a| b.iter(|| a.check_axioms_with(exec)));
        }
    }
    group.finish();
}

fn derivations(c: &mut Criterion) {
    let q = FieldSpec::rationals();
    let h = heisenberg(&q, 2).unwrap().algebra;
    let mut group = c.benchmark_group("derivation_space");
    group.sample_size(20);
    for (mode, exec) in MODES {
        group.bench_function(BenchmarkId::new(mode, "h5_q"), |b| b.iter(|| derivation_space_with(&h, exec).unwrap()));
    }
    group.finish();
}

fn bch(c: &mut Criterion) {
    let f = FieldSpec::prime(3).unwrap();
    let g = BchGroup::new(&heisenberg(&f, 1).unwrap().algebra).unwrap();
    let mut group = c.benchmark_group("bch_group_laws");
    group.sample_size(10);
    for (mode, exec) in MODES {
        group.bench_function(BenchmarkId::new(mode, "h3_gf3"), |b| {
            b.iter(|| g.check_group_with(CheckMode::Exhaustive, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, axioms, derivations, bch);
criterion_main!(benches);
