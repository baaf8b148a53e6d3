use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hgs_core::holomorph::{pq_holomorph, PqType};
use hgs_core::oracle::regular_subgroups;
use hgs_core::sqfree::sophie_germain_params;
use hgs_core::transitive::Enumeration;
use hgs_core::{Caps, Exec};

fn enumeration(c: &mut Criterion) {
    let sg = sophie_germain_params(3).unwrap();
    let mut group = c.benchmark_group("enumerate q=3");
    group.sample_size(10);
    for ty in [PqType::Cyclic, PqType::Metacyclic] {
        for exec in [Exec::Sequential, Exec::Parallel] {
            group.bench_with_input(BenchmarkId::new(ty.name(), format!("{exec:?}")), &exec, |b, &exec| {
                b.iter(|| {
                    let hol = pq_holomorph(&sg, ty, Caps::default().elements).unwrap();
                    Enumeration::run(hol, Caps::default(), exec).unwrap().classes.len()
                })
            });
        }
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("regular subgroups of Sym(6)");
    group.sample_size(10);
    for exec in [Exec::Sequential, Exec::Parallel] {
        group.bench_function(format!("{exec:?}"), |b| b.iter(|| regular_subgroups(6, exec).unwrap().len()));
    }
    group.finish();
}

criterion_group!(benches, enumeration, oracle);
criterion_main!(benches);
