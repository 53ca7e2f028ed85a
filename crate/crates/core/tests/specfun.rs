use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use susy_trm::specfun::{gamma, hyp2f1, hyp2f1_dz, hyp2f1_with_dz};
use susy_trm::SpecfunError;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

fn random_disk_point(rng: &mut StdRng, radius: f64) -> Complex64 {
    let r = radius * rng.gen::<f64>().sqrt();
    Complex64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU))
}

fn random_parameter(rng: &mut StdRng) -> Complex64 {
    c(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0))
}

#[test]
fn gamma_recurrence() {
    let mut rng = StdRng::seed_from_u64(11);
    let mut worst = 0.0_f64;
    for _ in 0..100 {
        let z = loop {
            let z = random_disk_point(&mut rng, 20.0);
            if z.re > 0.0 {
                break z;
            }
        };
        let lhs = gamma(z + 1.0).unwrap();
        let rhs = z * gamma(z).unwrap();
        worst = worst.max(rel(lhs, rhs));
    }
    assert!(worst <= 1e-11, "worst relative error {worst:e}");
}

#[test]
fn gamma_reflection() {
    let mut rng = StdRng::seed_from_u64(12);
    for _ in 0..100 {
        let z = c(rng.gen_range(-8.0..8.0), rng.gen_range(-5.0..5.0));
        let lhs = gamma(z).unwrap() * gamma(1.0 - z).unwrap();
        let rhs = std::f64::consts::PI / (std::f64::consts::PI * z).sin();
        assert!(rel(lhs, rhs) <= 1e-11, "{z}");
    }
}

#[test]
fn gamma_examples() {
    assert!(rel(gamma(c(1.0, 0.0)).unwrap(), c(1.0, 0.0)) < 1e-14);
    assert!(
        rel(
            gamma(c(0.5, 0.0)).unwrap(),
            c(std::f64::consts::PI.sqrt(), 0.0)
        ) < 1e-13
    );
    let g = gamma(c(0.0, 1.0)).unwrap();
    let expected = std::f64::consts::PI / std::f64::consts::PI.sinh();
    assert!((g.norm_sqr() - expected).abs() / expected < 1e-12);
    assert!(matches!(
        gamma(c(-3.0, 0.0)),
        Err(SpecfunError::Pole { .. })
    ));
    assert!(matches!(gamma(c(0.0, 0.0)), Err(SpecfunError::Pole { .. })));
}

#[test]
fn symmetric_in_alpha_and_beta() {
    let mut rng = StdRng::seed_from_u64(13);
    for _ in 0..100 {
        let (alpha, beta) = (random_parameter(&mut rng), random_parameter(&mut rng));
        let gamma_c = c(rng.gen_range(0.5..4.0), rng.gen_range(-2.0..2.0));
        let z = random_disk_point(&mut rng, 0.8);
        let f = hyp2f1(alpha, beta, gamma_c, z).unwrap();
        let g = hyp2f1(beta, alpha, gamma_c, z).unwrap();
        assert_eq!(f, g, "({alpha}, {beta}, {gamma_c}, {z})");
        assert_eq!(
            hyp2f1_dz(alpha, beta, gamma_c, z).unwrap(),
            hyp2f1_dz(beta, alpha, gamma_c, z).unwrap()
        );
    }
}

#[test]
fn derivative_matches_finite_differences() {
    let mut rng = StdRng::seed_from_u64(14);
    let h = 1e-6;
    for _ in 0..50 {
        let (alpha, beta) = (random_parameter(&mut rng), random_parameter(&mut rng));
        let gamma_c = c(rng.gen_range(0.5..4.0), rng.gen_range(-2.0..2.0));
        let z = random_disk_point(&mut rng, 0.8);
        let f = |z| hyp2f1(alpha, beta, gamma_c, z).unwrap();
        let along_re = (f(z + c(h, 0.0)) - f(z - c(h, 0.0))) / (2.0 * h);
        let along_im = (f(z + c(0.0, h)) - f(z - c(0.0, h))) / c(0.0, 2.0 * h);
        let d = hyp2f1_dz(alpha, beta, gamma_c, z).unwrap();
        let scale = d.norm().max(f(z).norm());
        assert!((along_re - d).norm() <= 1e-6 * scale, "re step at {z}");
        assert!((along_im - d).norm() <= 1e-6 * scale, "im step at {z}");
    }
}

#[test]
fn terminating_series_is_a_polynomial() {
    let mut rng = StdRng::seed_from_u64(15);
    for n in 0..=10usize {
        for _ in 0..5 {
            let beta = random_parameter(&mut rng);
            let gamma_c = c(rng.gen_range(0.5..4.0), rng.gen_range(-2.0..2.0));
            let z = random_disk_point(&mut rng, 2.0);
            let alpha = c(-(n as f64), 0.0);
            // Σ_k C(n,k)(−1)^k (β)_k/(γ)_k z^k, summed with exact rising factorials
            let mut sum = c(0.0, 0.0);
            let mut magnitude = 0.0;
            let mut term = c(1.0, 0.0);
            for k in 0..=n {
                sum += term;
                magnitude += term.norm();
                let kf = k as f64;
                term *= (kf - n as f64) * (beta + kf) / ((gamma_c + kf) * (kf + 1.0)) * z;
            }
            let got = hyp2f1(alpha, beta, gamma_c, z).unwrap();
            assert!(
                (got - sum).norm() <= 1e-13 * magnitude,
                "n={n}: {got} vs {sum}"
            );
        }
    }
}

#[test]
fn closed_form_examples() {
    let one = c(1.0, 0.0);
    let z = c(0.3, 0.2);
    for (alpha, beta, gamma_c) in [
        (c(0.5, 1.0), c(-1.5, 0.2), c(2.5, 0.0)),
        (one, one, c(2.0, 0.0)),
    ] {
        assert_eq!(hyp2f1(alpha, beta, gamma_c, c(0.0, 0.0)).unwrap(), one);
        let d0 = hyp2f1_dz(alpha, beta, gamma_c, c(0.0, 0.0)).unwrap();
        assert!(rel(d0, alpha * beta / gamma_c) < 1e-15);
    }
    let log_form = -(one - z).ln() / z;
    assert!(rel(hyp2f1(one, one, c(2.0, 0.0), z).unwrap(), log_form) < 1e-14);

    let x = c(0.3, 0.0);
    let derivative = (one / (one - x) + (one - x).ln() / x) / x;
    assert!(rel(hyp2f1_dz(one, one, c(2.0, 0.0), x).unwrap(), derivative) < 1e-13);

    let (beta, gamma_c) = (c(0.7, -0.4), c(1.3, 0.5));
    let quadratic =
        one - 2.0 * beta * z / gamma_c + beta * (beta + 1.0) * z * z / (gamma_c * (gamma_c + 1.0));
    assert!(rel(hyp2f1(c(-2.0, 0.0), beta, gamma_c, z).unwrap(), quadratic) < 1e-15);
    let far = c(3.0, -4.0);
    let linear = hyp2f1_with_dz(c(-1.0, 0.0), beta, gamma_c, far).unwrap();
    assert!(rel(linear.derivative, -beta / gamma_c) < 1e-15);
}

#[test]
fn domain_errors() {
    let one = c(1.0, 0.0);
    assert!(matches!(
        hyp2f1(one, one, c(2.0, 0.0), c(0.9999999999, 0.0)),
        Err(SpecfunError::Convergence { .. })
    ));
    assert!(matches!(
        hyp2f1(one, one, c(-2.0, 0.0), c(0.5, 0.0)),
        Err(SpecfunError::ParameterPole { .. })
    ));
    assert!(matches!(
        hyp2f1(one, one, c(2.0, 0.0), c(f64::NAN, 0.0)),
        Err(SpecfunError::NonFinite)
    ));
}
