//! Adaptive composite Gauss–Legendre quadrature.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Absolute tolerance of [`quadrature`].
pub const ABS_TOLERANCE: f64 = 1e-10;
/// Relative floor used when the integral is large enough that the absolute
/// target would sit below rounding.
pub const REL_TOLERANCE: f64 = 1e-13;
/// Evaluation budget of one adaptive integration.
pub const MAX_EVALUATIONS: usize = 1_000_000;

/// Nodes and weights of the n-point Gauss–Legendre rule on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // three-term recurrence for P_n and its derivative
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else { p1 };
            let pn1 = if n == 0 { 0.0 } else { p0 };
            dp = n as f64 * (x * pn - pn1) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

pub(crate) fn gl32() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(32))
}

/// Fixed 32-point rule on [lo, hi].
pub fn gl32_panel<F>(f: &F, lo: f64, hi: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64> + ?Sized,
{
    let (nodes, weights) = gl32();
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    let mut acc = 0.0;
    for (t, w) in nodes.iter().zip(weights) {
        acc += w * f(mid + half * t)?;
    }
    Ok(acc * half)
}

/// ∫_lo^hi f(x) dx to [`ABS_TOLERANCE`] (or [`REL_TOLERANCE`] relative,
/// whichever is looser).
pub fn quadrature<F>(f: F, lo: f64, hi: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    quadrature_with_tolerance(f, lo, hi, ABS_TOLERANCE)
}

pub fn quadrature_with_tolerance<F>(f: F, lo: f64, hi: f64, abs_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(lo < hi) {
        return Err(Error::Precondition(format!(
            "quadrature bounds must satisfy lo < hi (got {lo}, {hi})"
        )));
    }
    let mut evaluations = 32;
    let whole = gl32_panel(&f, lo, hi)?;
    let mut total = 0.0;
    // explicit stack of (lo, hi, estimate, tolerance)
    let mut stack = vec![(lo, hi, whole, abs_tol)];
    while let Some((a, b, estimate, tol)) = stack.pop() {
        let mid = 0.5 * (a + b);
        let left = gl32_panel(&f, a, mid)?;
        let right = gl32_panel(&f, mid, b)?;
        evaluations += 64;
        let refined = left + right;
        let err = (refined - estimate).abs();
        let accept =
            err <= tol.max(REL_TOLERANCE * refined.abs()) || (b - a) <= 1e-14 * (1.0 + a.abs());
        if accept {
            total += refined;
        } else {
            if evaluations >= MAX_EVALUATIONS {
                return Err(Error::QuadratureConvergence(evaluations));
            }
            stack.push((a, mid, left, 0.5 * tol));
            stack.push((mid, b, right, 0.5 * tol));
        }
    }
    if !total.is_finite() {
        return Err(Error::Numerical(
            "quadrature produced a non-finite value".into(),
        ));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre(32);
        let s: f64 = w.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
        // ∫ x^62 over [-1,1] = 2/63
        let m: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(62)).sum();
        assert!((m - 2.0 / 63.0).abs() < 1e-14);
    }

    #[test]
    fn sin_squared() {
        let v = quadrature(|x| Ok(x.sin().powi(2)), 0.0, PI).unwrap();
        assert!((v - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn peaked_integrand() {
        // ∫_0^π sin^6 x e^{-100x/3} dx against a fine trapezoid sum
        let f = |x: f64| x.sin().powi(6) * (-100.0 * x / 3.0).exp();
        let v = quadrature(|x| Ok(f(x)), 0.0, PI).unwrap();
        let n = 100_000;
        let h = PI / n as f64;
        let trap: f64 = (1..n).map(|k| f(k as f64 * h)).sum::<f64>() * h;
        assert!(
            (v - trap).abs() < 1e-8 * trap.abs().max(1e-300) + 1e-14,
            "{v} {trap}"
        );
    }

    #[test]
    fn bad_bounds() {
        assert!(quadrature(Ok, 1.0, 1.0).is_err());
    }
}
