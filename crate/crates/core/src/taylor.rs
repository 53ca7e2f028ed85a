//! Taylor continuation of solutions of ψ'' = 2(V₀ − E)ψ across (0, π).
//!
//! Checkpoints x_k carry the local expansion ψ(x_k + h_k t) = Σ P_j t^j for
//! t ∈ [0, 1]. The step h_k is at most 0.4 of the distance to the nearer
//! pole of V₀, so every expansion converges geometrically. Coefficients of
//! cot are generated from cot' = −(1 + cot²) and csc² = 1 + cot².

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result, SpecfunError};
use crate::solution::Sample;

const STEP_FRACTION: f64 = 0.4;
const MAX_STEP: f64 = 0.2;
/// Bound on h·√(2|V₀ − E|) so that oscillatory expansions do not cancel.
const MAX_PHASE: f64 = 2.0;
/// Checkpoints stop once π − x falls below this.
const END_GAP: f64 = 1e-14;
const TOLERANCE: f64 = 1e-17;
const MAX_ORDER: usize = 800;

#[derive(Debug, Clone)]
struct Checkpoint {
    x: f64,
    h: f64,
    coeffs: Vec<Complex64>,
}

#[derive(Debug, Clone)]
pub(crate) struct TaylorPath {
    nodes: Vec<Checkpoint>,
}

fn expand(
    half_aa: f64,
    b: f64,
    energy: Complex64,
    x: f64,
    h: f64,
    start: Sample,
) -> Result<Vec<Complex64>> {
    let zero = Complex64::new(0.0, 0.0);
    let mut cot = vec![x.cos() / x.sin()];
    let mut u: Vec<Complex64> = Vec::new();
    let mut p = vec![start.value, start.derivative * h];
    let mut size = p[0].norm() + p[1].norm();
    for k in 0..MAX_ORDER {
        let mut s: f64 = (0..=k).map(|j| cot[j] * cot[k - j]).sum();
        if k == 0 {
            s += 1.0;
        }
        cot.push(-h * s / (k + 1) as f64);
        let mut uk = Complex64::new(half_aa * s - b * cot[k], 0.0);
        if k == 0 {
            uk -= energy;
        }
        u.push(uk);
        let conv = (0..=k).fold(zero, |acc, j| acc + u[j] * p[k - j]);
        let next = 2.0 * h * h * conv / ((k + 1) * (k + 2)) as f64;
        p.push(next);
        size += next.norm() * (k + 2) as f64;
        let m = p.len();
        if m >= 8
            && (p[m - 1].norm() * m as f64 + p[m - 2].norm() * (m - 1) as f64) <= TOLERANCE * size
        {
            return Ok(p);
        }
    }
    Err(SpecfunError::Convergence {
        terms: MAX_ORDER,
        z_abs: STEP_FRACTION,
    }
    .into())
}

fn horner(coeffs: &[Complex64], h: f64, t: f64) -> Sample {
    let mut value = Complex64::new(0.0, 0.0);
    let mut slope = Complex64::new(0.0, 0.0);
    for (j, c) in coeffs.iter().enumerate().rev() {
        value = value * t + c;
        if j > 0 {
            slope = slope * t + c * j as f64;
        }
    }
    Sample::new(value, slope / h)
}

impl TaylorPath {
    /// Continues the solution with ψ(x0), ψ'(x0) given by `start` up to
    /// within [`END_GAP`] of π.
    pub(crate) fn new(a: f64, b: f64, energy: Complex64, x0: f64, start: Sample) -> Result<Self> {
        let half_aa = 0.5 * a * (a + 1.0);
        let mut nodes = Vec::new();
        let (mut x, mut state) = (x0, start);
        loop {
            let gap = PI - x;
            let sin = x.sin();
            let local =
                (Complex64::new(half_aa / (sin * sin) - b * x.cos() / sin, 0.0) - energy).norm();
            let h = (STEP_FRACTION * x.min(gap))
                .min(MAX_STEP)
                .min(MAX_PHASE / (2.0 * local).sqrt().max(1e-300));
            let coeffs = expand(half_aa, b, energy, x, h, state)?;
            let next = x + h;
            let end = next >= PI || gap < END_GAP;
            if !end {
                state = horner(&coeffs, h, (next - x) / h);
            }
            nodes.push(Checkpoint { x, h, coeffs });
            if end {
                break;
            }
            x = next;
        }
        Ok(Self { nodes })
    }

    pub(crate) fn start(&self) -> f64 {
        self.nodes[0].x
    }

    pub(crate) fn eval(&self, x: f64) -> Result<Sample> {
        let k = self.nodes.partition_point(|n| n.x <= x);
        if k == 0 {
            return Err(Error::Domain(x));
        }
        let node = &self.nodes[k - 1];
        let t = (x - node.x) / node.h;
        if t > 1.0 + 1e-9 {
            return Err(Error::Domain(x));
        }
        Ok(horner(&node.coeffs, node.h, t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_oscillator_without_potential() {
        // a → 0 and b = 0 leaves ψ'' = −2Eψ; ψ = sin(kx) with k = √(2E)
        let e: f64 = 8.0;
        let k = (2.0 * e).sqrt();
        let x0 = 0.3;
        let start = Sample::new(
            Complex64::new((k * x0).sin(), 0.0),
            Complex64::new(k * (k * x0).cos(), 0.0),
        );
        let path = TaylorPath::new(0.0, 0.0, Complex64::new(e, 0.0), x0, start).unwrap();
        for x in [0.31, 1.0, 2.0, 3.0, PI - 1e-6] {
            let s = path.eval(x).unwrap();
            assert!((s.value.re - (k * x).sin()).abs() < 1e-13, "{x}");
            assert!((s.derivative.re - k * (k * x).cos()).abs() < 1e-12, "{x}");
        }
        assert!(path.eval(0.1).is_err());
    }
}
