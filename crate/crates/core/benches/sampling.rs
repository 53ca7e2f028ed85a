use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use susy_trm::oracle::{count_nodes_with, fd_eigensolve, Grid};
use susy_trm::susy2::RealTransform;
use susy_trm::{exec, general_solution, Execution, TrmParams};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn eigensolve(c: &mut Criterion) {
    let p = TrmParams::new(2.0, 50.0).unwrap();
    let t = RealTransform::new(
        &p,
        &"general:-150:1".parse().unwrap(),
        &"general:-250:-1".parse().unwrap(),
    )
    .unwrap();
    let v = t.potential().clone();
    let grid = Grid::default();
    let mut group = c.benchmark_group("fd_eigensolve");
    group.sample_size(20);
    for (name, mode) in MODES {
        group.bench_with_input(
            BenchmarkId::new("create-two", name),
            &mode,
            |bench, &mode| bench.iter(|| fd_eigensolve(|x| v.eval(x), &grid, 9, mode).unwrap()),
        );
    }
    group.finish();
}

fn sampling(c: &mut Criterion) {
    let p = TrmParams::new(2.0, 50.0).unwrap();
    let f = general_solution(&p, -310.5, 1.0).unwrap();
    let grid = Grid::default();
    let nodes = grid.nodes();
    let mut group = c.benchmark_group("sampling");
    for (name, mode) in MODES {
        group.bench_with_input(
            BenchmarkId::new("general solution", name),
            &mode,
            |bench, &mode| {
                bench.iter(|| exec::try_map(mode, &nodes, |&x| f.eval(black_box(x))).unwrap())
            },
        );
        group.bench_with_input(
            BenchmarkId::new("node count", name),
            &mode,
            |bench, &mode| bench.iter(|| count_nodes_with(&f, &grid, mode).unwrap()),
        );
    }
    group.finish();
}

criterion_group!(benches, eigensolve, sampling);
criterion_main!(benches);
