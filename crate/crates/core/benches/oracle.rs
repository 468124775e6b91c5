use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use depthlab::constructions::{edge_ideal, nonmonotone_example, squarefree_veronese, Graph};
use depthlab::{Execution, MonomialIdeal, Oracle};

fn inputs() -> Vec<(&'static str, MonomialIdeal, usize)> {
    vec![
        ("whiskered-triangle", edge_ideal(&Graph::whiskered_triangle()).unwrap(), 3),
        ("sqfree-veronese-5-3", squarefree_veronese(5, 3).unwrap(), 2),
        ("nonmonotone", nonmonotone_example(), 2),
    ]
}

fn modes() -> Vec<(&'static str, Execution)> {
    let mut modes = vec![("sequential", Execution::Sequential)];
    if Execution::parallel_available() {
        modes.push(("parallel", Execution::Parallel));
    }
    modes
}

fn betti(c: &mut Criterion) {
    let mut group = c.benchmark_group("betti_table");
    group.sample_size(10);
    for (name, ideal, kmax) in inputs() {
        let power = ideal.power(kmax as u32).unwrap();
        for (mode, execution) in modes() {
            let oracle = Oracle {
                execution,
                ..Oracle::default()
            };
            group.bench_with_input(BenchmarkId::new(mode, name), &power, |b, i| {
                b.iter(|| oracle.betti_table(i).unwrap())
            });
        }
    }
    group.finish();
}

fn profile(c: &mut Criterion) {
    let mut group = c.benchmark_group("depth_profile");
    group.sample_size(10);
    for (name, ideal, kmax) in inputs() {
        for (mode, execution) in modes() {
            let oracle = Oracle {
                execution,
                ..Oracle::default()
            };
            group.bench_with_input(BenchmarkId::new(mode, name), &ideal, |b, i| {
                b.iter(|| oracle.depth_profile(i, kmax).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, betti, profile);
criterion_main!(benches);
