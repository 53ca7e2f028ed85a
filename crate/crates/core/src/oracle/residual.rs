use num_complex::Complex64;

use crate::error::Result;
use crate::solution::SolutionEvaluator;

/// Step of the central difference applied to the derivative channel.
pub const DIFFERENCE_STEP: f64 = 1e-4;

/// max over `points` of |−½f'' + (V − E) f| / ((1 + |f|)(1 + |E|)), with f''
/// taken as the seven-point central difference of f'.
pub fn ode_residual<V>(
    f: &SolutionEvaluator,
    energy: Complex64,
    potential: V,
    points: &[f64],
) -> Result<f64>
where
    V: Fn(f64) -> Result<f64>,
{
    let h = DIFFERENCE_STEP;
    let mut worst = 0.0_f64;
    for &x in points {
        let centre = f.eval(x)?;
        let mut spread = [Complex64::new(0.0, 0.0); 3];
        for (k, d) in spread.iter_mut().enumerate() {
            let step = (k + 1) as f64 * h;
            *d = f.eval(x + step)?.derivative - f.eval(x - step)?.derivative;
        }
        let second = (45.0 * spread[0] - 9.0 * spread[1] + spread[2]) / (60.0 * h);
        let v = potential(x)?;
        let lhs = -0.5 * second + (v - energy) * centre.value;
        let scale = (1.0 + centre.value.norm()) * (1.0 + energy.norm());
        worst = worst.max(lhs.norm() / scale);
    }
    Ok(worst)
}

/// `count` points spread uniformly over [lo, hi].
pub fn interior_points(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![0.5 * (lo + hi)];
    }
    (0..count)
        .map(|k| lo + (hi - lo) * k as f64 / (count - 1) as f64)
        .collect()
}
