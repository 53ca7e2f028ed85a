use std::f64::consts::PI;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use susy_trm::oracle::{count_nodes, ode_residual, quadrature, Grid};
use susy_trm::trm::{LeftClosedForm, RightConnectionForm};
use susy_trm::{
    bound_state, general_solution, predicted_node_count, psi_l, psi_r, SolutionEvaluator, TrmParams,
};

fn params() -> TrmParams {
    TrmParams::new(2.0, 50.0).unwrap()
}

fn real(e: f64) -> Complex64 {
    Complex64::new(e, 0.0)
}

fn random_points(rng: &mut StdRng, count: usize) -> Vec<f64> {
    (0..count).map(|_| rng.gen_range(0.05..PI - 0.05)).collect()
}

/// Residual with the max(1, |E|) normalization used for the module-level
/// invariant.
fn residual(f: &SolutionEvaluator, p: &TrmParams, points: &[f64]) -> f64 {
    let e = f.energy();
    let r = ode_residual(f, e, |x| p.potential(x), points).unwrap();
    r * (1.0 + e.norm()) / e.norm().max(1.0)
}

fn evaluators(p: &TrmParams) -> Vec<SolutionEvaluator> {
    let mut out = Vec::new();
    for e in [-310.5, -200.0, -100.0, -60.0, -40.0, -10.0, -2.0, 0.0] {
        out.push(psi_l(p, real(e)).unwrap());
        out.push(psi_r(p, real(e)).unwrap());
    }
    for (e, lambda) in [
        (-310.5, 1.0),
        (-200.0, 10.0),
        (-150.0, 1.0),
        (-250.0, -1.0),
        (-60.0, -1.0),
        (-100.0, 1.0),
    ] {
        out.push(general_solution(p, e, lambda).unwrap());
    }
    for n in 0..=4 {
        out.push(bound_state(p, n).unwrap());
    }
    out.push(psi_l(p, Complex64::new(p.bound_energy(3), 20.0)).unwrap());
    out.push(psi_r(p, Complex64::new(0.0, 1.0)).unwrap());
    out
}

#[test]
fn every_evaluator_solves_the_equation() {
    let mut rng = StdRng::seed_from_u64(21);
    for p in [params(), TrmParams::new(2.0, 10.0).unwrap()] {
        for f in evaluators(&p) {
            let points = random_points(&mut rng, 100);
            let r = residual(&f, &p, &points);
            assert!(r <= 1e-6, "{:?} at E={}: {r:e}", f.kind(), f.energy());
        }
    }
}

#[test]
fn wronskian_of_left_and_right_is_constant() {
    let p = params();
    let mut rng = StdRng::seed_from_u64(22);
    for e in [-310.5, -200.0, -60.0, -10.0, 0.0] {
        let (l, r) = (psi_l(&p, real(e)).unwrap(), psi_r(&p, real(e)).unwrap());
        let w = |x: f64| {
            let (f, df) = l.eval_real(x).unwrap();
            let (g, dg) = r.eval_real(x).unwrap();
            f * dg - df * g
        };
        let reference = w(PI / 2.0);
        for x in random_points(&mut rng, 40) {
            assert!(
                (w(x) - reference).abs() <= 1e-7 * reference.abs(),
                "E={e} x={x}: {} vs {reference}",
                w(x)
            );
        }
    }
}

#[test]
fn node_rule_agrees_with_oracle() {
    let p = params();
    let grid = Grid::new(2000, 1e-4).unwrap();
    let mut rng = StdRng::seed_from_u64(23);
    let levels = p.spectrum(5);
    for draw in 0..30 {
        let gap = draw % 5;
        let (lo, hi) = if gap == 0 {
            (levels[0] - 150.0, levels[0])
        } else {
            (levels[gap - 1], levels[gap])
        };
        let margin = 0.05 * (hi - lo);
        let e = rng.gen_range(lo + margin..hi - margin);
        let magnitude = 10f64.powf(rng.gen_range(-1.0..1.0));
        let lambda = if rng.gen::<bool>() {
            magnitude
        } else {
            -magnitude
        };
        let f = general_solution(&p, e, lambda).unwrap();
        let expected = predicted_node_count(&p, e, lambda).unwrap();
        assert_eq!(
            count_nodes(&f, &grid).unwrap(),
            expected,
            "E={e} lambda={lambda}"
        );
    }
}

#[test]
fn bound_states_are_orthonormal() {
    let p = params();
    let states: Vec<_> = (0..=4).map(|n| bound_state(&p, n).unwrap()).collect();
    for m in 0..states.len() {
        for n in m..states.len() {
            let overlap = quadrature(
                |x| Ok(states[m].eval_real(x)?.0 * states[n].eval_real(x)?.0),
                0.0,
                PI,
            )
            .unwrap();
            let expected = if m == n { 1.0 } else { 0.0 };
            assert!((overlap - expected).abs() <= 1e-6, "<{m}|{n}> = {overlap}");
        }
    }
}

#[test]
fn real_energies_give_real_solutions() {
    let p = params();
    let mut rng = StdRng::seed_from_u64(24);
    for e in [-310.5, -200.0, -37.5 + 3.0, 0.0] {
        for f in [psi_l(&p, real(e)).unwrap(), psi_r(&p, real(e)).unwrap()] {
            for x in random_points(&mut rng, 30) {
                assert!(f.imaginary_residue(x).unwrap() <= 1e-9, "E={e} x={x}");
            }
        }
    }
}

#[test]
fn reflection_swaps_sides_up_to_a_constant() {
    // at bound energies ψ_L and ψ_R are both multiples of the eigenfunction
    let p = params();
    for n in 0..=3 {
        let e = real(p.bound_energy(n));
        let (l, r) = (psi_l(&p, e).unwrap(), psi_r(&p, e).unwrap());
        let ratio = |x: f64| l.eval_real(x).unwrap().0 / r.eval_real(x).unwrap().0;
        let reference = ratio(0.9);
        for x in [0.3, 0.7, 1.4, 2.0, 2.6] {
            assert!(
                (ratio(x) - reference).abs() <= 1e-8 * reference.abs(),
                "n={n} x={x}"
            );
        }
    }
}

#[test]
fn series_and_connection_forms_agree() {
    let p = params();
    for e in [
        real(-310.5),
        real(-200.0),
        real(-60.0),
        real(0.0),
        Complex64::new(-16.7, 20.0),
    ] {
        let form = LeftClosedForm::new(&p, e).unwrap();
        for x in [0.1, 0.3] {
            let s = form.eval_series(x).unwrap();
            let c = form.eval_connection(x).unwrap();
            assert!(
                (s.value - c.value).norm() <= 1e-8 * s.value.norm(),
                "E={e} x={x}"
            );
            assert!(
                (s.derivative - c.derivative).norm() <= 1e-8 * s.derivative.norm(),
                "E={e} x={x}"
            );
        }
        assert!(!form.uses_series(1.0));
        for x in [0.2, 1.0, 2.0, 2.8] {
            let t = form.eval(x).unwrap();
            let c = form.eval_connection(x).unwrap();
            assert!(
                (t.value - c.value).norm() <= 1e-8 * t.value.norm().max(c.value.norm()),
                "E={e} x={x}"
            );
        }
    }
}

#[test]
fn right_connection_form_matches_mirrored_evaluation() {
    let p = params();
    for e in [-200.0, -60.0, -10.0] {
        let form = RightConnectionForm::new(&p, real(e)).unwrap();
        let mirrored = psi_r(&p, real(e)).unwrap();
        for x in [0.4, 1.0, 1.8, 2.5] {
            let a = form.eval(x).unwrap().value;
            let b = mirrored.eval_raw(x).unwrap().value;
            assert!((a - b).norm() <= 1e-7 * b.norm(), "E={e} x={x}: {a} vs {b}");
        }
    }
}

#[test]
fn boundary_behaviour() {
    let p = params();
    for e in [-200.0, -10.0] {
        let l = psi_l(&p, real(e)).unwrap();
        let r = psi_r(&p, real(e)).unwrap();
        // ψ_L ~ x^{a+1} at 0, ψ_R ~ (π − x)^{a+1} at π, ψ_L ~ (π − x)^{−a} at π
        let l_ratio = l.eval_real(1e-4).unwrap().0 / l.eval_real(2e-4).unwrap().0;
        let r_ratio = r.eval_real(PI - 1e-4).unwrap().0 / r.eval_real(PI - 2e-4).unwrap().0;
        let growth = l.eval_real(PI - 1e-4).unwrap().0 / l.eval_real(PI - 2e-4).unwrap().0;
        assert!((l_ratio - 0.125).abs() < 1e-2, "{l_ratio}");
        assert!((r_ratio - 0.125).abs() < 1e-2, "{r_ratio}");
        assert!((growth - 4.0).abs() < 1e-1, "{growth}");
    }
}
