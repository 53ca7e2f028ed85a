use num_complex::Complex64;
use susy_trm::oracle::Grid;
use susy_trm::{verify, Execution, SeedSpec, Side, TransformSpec, TrmParams};

fn seed(s: &str) -> SeedSpec {
    s.parse().unwrap()
}

fn matrix() -> Vec<(f64, f64, TransformSpec)> {
    let first = |b: f64, s: &str| (2.0, b, TransformSpec::FirstOrder { seed: seed(s) });
    let real = |s1: &str, s2: &str| {
        (
            2.0,
            50.0,
            TransformSpec::Real {
                seed1: seed(s1),
                seed2: seed(s2),
            },
        )
    };
    let complex = |re: f64, im: f64| {
        (
            2.0,
            50.0,
            TransformSpec::Complex {
                epsilon: Complex64::new(re, im),
                side: Side::L,
            },
        )
    };
    let confluent = |j: usize, w0: f64| (2.0, 50.0, TransformSpec::Confluent { j, w0 });
    let e3 = TrmParams::new(2.0, 50.0).unwrap().bound_energy(3);
    vec![
        first(10.0, "bound:0"),
        first(50.0, "bound:0"),
        first(50.0, "general:-310.5:1"),
        first(50.0, "general:-200:10"),
        first(50.0, "L:-310.5"),
        first(50.0, "R:-200"),
        real("bound:1", "bound:0"),
        real("bound:3", "bound:2"),
        real("general:-150:1", "general:-250:-1"),
        real("general:-2:1", "general:-10:-1"),
        real("R:-40", "general:-60:-1"),
        real("L:-2", "general:-10:-1"),
        real("bound:1", "general:-100:1"),
        real("general:0:-1", "bound:4"),
        real("bound:1", "R:-100"),
        real("L:0", "bound:4"),
        real("L:-40", "L:-60"),
        real("L:-2", "R:-10"),
        complex(e3, 1.0),
        complex(e3, 20.0),
        complex(0.0, 1.0),
        complex(0.0, 20.0),
        confluent(1, 0.0),
        confluent(1, 0.05),
        confluent(3, 0.0),
        confluent(3, 0.05),
    ]
}

#[test]
fn scenario_matrix() {
    let grid = Grid::default();
    let mut failures = Vec::new();
    for (a, b, spec) in matrix() {
        let p = TrmParams::new(a, b).unwrap();
        let t = match spec.build(&p) {
            Ok(t) => t,
            Err(e) => {
                failures.push(format!("{spec}: {e}"));
                continue;
            }
        };
        let r = verify(&t, &grid, Execution::Parallel).unwrap();
        println!(
            "{spec}: {} pass={} tol={:.2e} res={:?} nodes={:?}",
            r.provenance,
            r.passed(),
            r.comparison.tolerance,
            r.residuals
                .iter()
                .map(|e| format!("{}={:.1e}", e.label, e.residual))
                .collect::<Vec<_>>(),
            r.node_counts
        );
        if !r.passed() {
            failures.push(format!(
                "{spec}: {:?} vs {:?}",
                r.predicted, r.spectrum.eigenvalues
            ));
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
}
