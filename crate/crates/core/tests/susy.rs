use std::f64::consts::PI;

use num_complex::Complex64;
use susy_trm::oracle::{interior_points, ode_residual};
use susy_trm::susy1::{create_ground, delete_ground, isospectral, map_eigenfunction_1};
use susy_trm::susy2::{
    confluent_potential, confluent_wronskian, wronskian_complex, RealTransform, WronskianEvaluator,
};
use susy_trm::{bound_state, psi_l, psi_r, PartnerPotential, Side, TrmParams};

fn params(a: f64, b: f64) -> TrmParams {
    TrmParams::new(a, b).unwrap()
}

fn assert_same_potential(v: &PartnerPotential, expected: &TrmParams, tol: f64) {
    for k in 1..=200 {
        let x = PI * k as f64 / 201.0;
        let want = expected.potential(x).unwrap();
        let got = v.eval(x).unwrap();
        assert!(
            (got - want).abs() <= tol * want.abs().max(1.0),
            "x={x}: {got} vs {want}"
        );
    }
}

#[test]
fn first_order_shape_invariance() {
    for (a, b) in [(2.0, 10.0), (2.0, 50.0), (1.5, 25.0)] {
        let v = delete_ground(&params(a, b)).unwrap();
        assert_same_potential(&v, &params(a + 1.0, b), 1e-8);
    }
}

#[test]
fn second_order_shape_invariance() {
    for b in [50.0, 10.0] {
        let p = params(2.0, b);
        let t = RealTransform::new(&p, &"bound:1".parse().unwrap(), &"bound:0".parse().unwrap())
            .unwrap();
        assert_same_potential(t.potential(), &params(4.0, b), 1e-7);
    }
}

#[test]
fn intertwining_after_deleting_the_ground_state() {
    let p = params(2.0, 50.0);
    let v = delete_ground(&p).unwrap();
    let seed = bound_state(&p, 0).unwrap();
    let e0 = p.bound_energy(0);
    let points = interior_points(0.1, PI - 0.1, 50);
    for n in 1..=3 {
        let psi = bound_state(&p, n).unwrap();
        let mapped = map_eigenfunction_1(&seed, e0, &psi, p.bound_energy(n)).unwrap();
        let r = ode_residual(&mapped, mapped.energy(), |x| v.eval(x), &points).unwrap();
        assert!(r <= 1e-6, "n={n}: {r:e}");
    }
}

#[test]
fn large_lambda_approaches_the_right_isospectral_potential() {
    // u = λψ_R(1 + ρ) with ρ = ψ_L/(λψ_R); the limit holds where ρ is small
    let p = params(2.0, 50.0);
    let lambda = 1e6;
    for epsilon in [-310.5, -200.0] {
        let created = create_ground(&p, epsilon, lambda).unwrap();
        let iso = isospectral(&p, epsilon, Side::R).unwrap();
        let (l, r) = (
            psi_l(&p, Complex64::new(epsilon, 0.0)).unwrap(),
            psi_r(&p, Complex64::new(epsilon, 0.0)).unwrap(),
        );
        let mut checked = 0;
        for x in interior_points(0.1, PI - 0.1, 100) {
            let rho = (l.eval_real(x).unwrap().0 / (lambda * r.eval_real(x).unwrap().0)).abs();
            if rho > 1e-8 {
                continue;
            }
            checked += 1;
            let (u, v) = (created.eval(x).unwrap(), iso.eval(x).unwrap());
            assert!(
                (u - v).abs() <= 1e-4 * v.abs().max(1.0),
                "eps={epsilon} x={x}: {u} vs {v}"
            );
        }
        assert!(checked >= 40, "eps={epsilon}: only {checked} points");
    }
}

fn assert_analytic_derivatives(w: &WronskianEvaluator, label: &str) {
    let h = 1e-5;
    for x in interior_points(0.2, PI - 0.2, 50) {
        let s = w.eval(x).unwrap();
        let (lo, hi) = (w.eval(x - h).unwrap(), w.eval(x + h).unwrap());
        let dw = (hi.w - lo.w) / (2.0 * h);
        let d2w = (hi.dw - lo.dw) / (2.0 * h);
        let scale = s.w.abs().max(s.dw.abs()).max(s.d2w.abs());
        assert!(
            (dw - s.dw).abs() <= 1e-6 * scale,
            "{label} W' at {x}: {dw} vs {}",
            s.dw
        );
        assert!(
            (d2w - s.d2w).abs() <= 1e-5 * scale,
            "{label} W'' at {x}: {d2w} vs {}",
            s.d2w
        );
    }
}

#[test]
fn wronskian_derivatives_match_finite_differences() {
    let p = params(2.0, 50.0);
    for (s1, s2) in [
        ("bound:1", "bound:0"),
        ("general:-150:1", "general:-250:-1"),
        ("L:-40", "L:-60"),
        ("bound:1", "R:-100"),
    ] {
        let t = RealTransform::new(&p, &s1.parse().unwrap(), &s2.parse().unwrap()).unwrap();
        assert_analytic_derivatives(t.wronskian(), &format!("{s1}, {s2}"));
    }
    for epsilon in [
        Complex64::new(p.bound_energy(3), 1.0),
        Complex64::new(0.0, 20.0),
    ] {
        let u = psi_l(&p, epsilon).unwrap();
        assert_analytic_derivatives(
            &wronskian_complex(&u, epsilon),
            &format!("complex {epsilon}"),
        );
    }
    for (j, w0) in [(1, 0.05), (3, 0.0)] {
        let w = confluent_wronskian(&bound_state(&p, j).unwrap(), w0).unwrap();
        assert_analytic_derivatives(&w.evaluator(), &format!("confluent j={j}"));
    }
}

/// c in V ≈ c/y² + d/y + e near an endpoint, from samples at y = δ·{1,2,4}.
fn fitted_coefficient(v: &PartnerPotential, left: bool, delta: f64) -> f64 {
    let ys = [delta, 2.0 * delta, 4.0 * delta];
    let g: Vec<f64> = ys
        .iter()
        .map(|&y| {
            let x = if left { y } else { PI - y };
            v.eval(x).unwrap() * y * y
        })
        .collect();
    // g = c + d y + e y²; second divided differences eliminate d and e
    let (y0, y1, y2) = (ys[0], ys[1], ys[2]);
    let d01 = (g[1] - g[0]) / (y1 - y0);
    let d12 = (g[2] - g[1]) / (y2 - y1);
    let e = (d12 - d01) / (y2 - y0);
    let d = d01 - e * (y0 + y1);
    g[0] - d * y0 - e * y0 * y0
}

#[test]
fn endpoint_coefficients_match_fits() {
    let p = params(2.0, 50.0);
    let mut cases: Vec<(String, PartnerPotential, (f64, f64))> = Vec::new();
    let real = |s1: &str, s2: &str| {
        RealTransform::new(&p, &s1.parse().unwrap(), &s2.parse().unwrap())
            .unwrap()
            .potential()
            .clone()
    };
    // ½(a+2)(a+3) = 10, ½(a−2)(a−1) = 0 and ½a(a+1) = 3 for a = 2
    cases.push(("(i)".into(), real("bound:1", "bound:0"), (10.0, 10.0)));
    cases.push((
        "(ii)".into(),
        real("general:-150:1", "general:-250:-1"),
        (0.0, 0.0),
    ));
    cases.push(("(iv)".into(), real("bound:1", "general:-100:1"), (3.0, 3.0)));
    cases.push(("(vi) L,R".into(), real("L:-2", "R:-10"), (3.0, 3.0)));
    cases.push(("(vi) L,L".into(), real("L:-40", "L:-60"), (10.0, 0.0)));
    let complex =
        susy_trm::susy2::complex_case_potential(&p, Complex64::new(0.0, 20.0), Side::L).unwrap();
    cases.push(("complex L".into(), complex, (10.0, 0.0)));
    cases.push((
        "confluent w0=0.05".into(),
        confluent_potential(&p, 1, 0.05).unwrap(),
        (3.0, 3.0),
    ));
    cases.push((
        "confluent w0=0".into(),
        confluent_potential(&p, 1, 0.0).unwrap(),
        (10.0, 3.0),
    ));
    cases.push((
        "confluent w0=-1".into(),
        confluent_potential(&p, 1, -1.0).unwrap(),
        (3.0, 10.0),
    ));
    for (label, v, (left, right)) in cases {
        let c = v.singular_coefficients();
        assert_eq!((c.left, c.right), (left, right), "{label}");
        for (is_left, expected) in [(true, left), (false, right)] {
            let fit = fitted_coefficient(&v, is_left, 1e-3);
            assert!(
                (fit - expected).abs() <= 0.05 * expected.max(1.0),
                "{label} left={is_left}: fit {fit} vs {expected}"
            );
        }
    }
}

#[test]
fn confluent_boundary_identities() {
    let p = params(2.0, 50.0);
    for j in [1, 3] {
        let psi = bound_state(&p, j).unwrap();
        for w0 in [0.0, 0.05, -1.0, -1.5] {
            let w = confluent_wronskian(&psi, w0).unwrap();
            assert!((w.total() - 1.0).abs() <= 1e-8, "Q(pi) = {}", w.total());
            assert!((w.cumulative(PI - 1e-12).unwrap() - 1.0).abs() <= 1e-8);
            assert_eq!(w.w0(), w0);
            assert!((w.sample(1e-9).unwrap().w - w0).abs() <= 1e-12);
        }
    }
}

#[test]
fn complex_case_smooths_with_larger_imaginary_part() {
    let p = params(2.0, 50.0);
    let e3 = p.bound_energy(3);
    let deviation = |im: f64| {
        let v =
            susy_trm::susy2::complex_case_potential(&p, Complex64::new(e3, im), Side::L).unwrap();
        interior_points(0.3, PI - 0.3, 400)
            .into_iter()
            .map(|x| (v.eval(x).unwrap() - p.potential(x).unwrap()).abs())
            .fold(0.0, f64::max)
    };
    assert!(deviation(20.0) < deviation(1.0));
}
