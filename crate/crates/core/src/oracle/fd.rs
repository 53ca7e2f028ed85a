//! Finite-difference eigensolver for −½ d²/dx² + V on [δ, π − δ] with
//! Dirichlet ends.
//!
//! The three-point Laplacian gives a symmetric tridiagonal matrix whose
//! lowest levels are extracted by Sturm-sequence bisection. Every solve runs
//! at two resolutions, n and 2n − 1 points, and the level-by-level
//! disagreement (times [`SAFETY_FACTOR`]) is reported as the certified
//! tolerance.

use crate::error::{Error, Result};
use crate::exec::{self, Execution};

use super::grid::Grid;

pub const SAFETY_FACTOR: f64 = 4.0;
/// Lower bound on the certified tolerance.
const TOLERANCE_FLOOR: f64 = 1e-9;

/// Symmetric tridiagonal matrix with a constant off-diagonal.
#[derive(Debug, Clone)]
pub struct Tridiagonal {
    pub diagonal: Vec<f64>,
    pub off_diagonal: f64,
}

impl Tridiagonal {
    /// Number of eigenvalues strictly below `lambda`.
    pub fn count_below(&self, lambda: f64) -> usize {
        let e2 = self.off_diagonal * self.off_diagonal;
        let mut count = 0;
        let mut q = 1.0;
        for (i, d) in self.diagonal.iter().enumerate() {
            q = if i == 0 {
                d - lambda
            } else {
                (d - lambda) - e2 / q
            };
            if q == 0.0 {
                q = -f64::EPSILON * (d.abs() + lambda.abs()).max(1.0);
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let r = 2.0 * self.off_diagonal.abs();
        let lo = self.diagonal.iter().copied().fold(f64::INFINITY, f64::min) - r;
        let hi = self
            .diagonal
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
            + r;
        (lo, hi)
    }

    /// The `k` lowest eigenvalues, ascending.
    pub fn lowest(&self, k: usize) -> Result<Vec<f64>> {
        let k = k.min(self.diagonal.len());
        let (glo, ghi) = self.gershgorin();
        if !(glo.is_finite() && ghi.is_finite()) {
            return Err(Error::Numerical("matrix has non-finite entries".into()));
        }
        let mut out = Vec::with_capacity(k);
        let mut floor = glo;
        for index in 0..k {
            let (mut lo, mut hi) = (floor, ghi);
            let mut converged = false;
            for _ in 0..300 {
                let mid = 0.5 * (lo + hi);
                if hi - lo <= 2.0 * f64::EPSILON * mid.abs().max(1.0) {
                    converged = true;
                    break;
                }
                if self.count_below(mid) > index {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            if !converged {
                return Err(Error::Numerical(format!(
                    "bisection for level {index} did not converge"
                )));
            }
            let value = 0.5 * (lo + hi);
            out.push(value);
            floor = lo;
        }
        Ok(out)
    }
}

/// Discretizes −½ u'' + V u on the interior nodes of `grid` from potential
/// samples at all of its nodes.
pub fn discretize(grid: &Grid, potential_samples: &[f64]) -> Result<Tridiagonal> {
    if potential_samples.len() != grid.n_points() {
        return Err(Error::Numerical(
            "potential sample count does not match grid".into(),
        ));
    }
    let h = grid.spacing();
    let kinetic = 1.0 / (h * h);
    let interior = &potential_samples[1..potential_samples.len() - 1];
    if let Some(bad) = interior.iter().position(|v| !v.is_finite()) {
        return Err(Error::Numerical(format!(
            "potential is not finite at x = {}",
            grid.node(bad + 1)
        )));
    }
    Ok(Tridiagonal {
        diagonal: interior.iter().map(|v| kinetic + v).collect(),
        off_diagonal: -0.5 * kinetic,
    })
}

/// Oracle eigenvalues and their certified tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    /// Levels on the refined (2n − 1 point) grid, ascending.
    pub eigenvalues: Vec<f64>,
    /// Levels on the base grid.
    pub coarse_eigenvalues: Vec<f64>,
    pub certified_tolerance: f64,
    pub n_points: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LevelMatch {
    pub predicted: f64,
    pub oracle: Option<f64>,
    pub deviation: f64,
    pub matched: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralComparison {
    pub levels: Vec<LevelMatch>,
    /// Oracle levels at or below the highest predicted level that are not
    /// within tolerance of any predicted level.
    pub unexpected: Vec<f64>,
    pub tolerance: f64,
}

impl SpectralComparison {
    pub fn passed(&self) -> bool {
        self.unexpected.is_empty() && self.levels.iter().all(|l| l.matched)
    }
}

impl SpectrumReport {
    pub fn compare(&self, predicted: &[f64]) -> SpectralComparison {
        let tol = self.certified_tolerance;
        let levels = predicted
            .iter()
            .map(|&p| {
                let nearest = self
                    .eigenvalues
                    .iter()
                    .copied()
                    .min_by(|a, b| (a - p).abs().total_cmp(&(b - p).abs()));
                let deviation = nearest.map_or(f64::INFINITY, |e| (e - p).abs());
                LevelMatch {
                    predicted: p,
                    oracle: nearest,
                    deviation,
                    matched: deviation <= tol,
                }
            })
            .collect();
        let ceiling = predicted.iter().copied().fold(f64::NEG_INFINITY, f64::max) + tol;
        let unexpected = self
            .eigenvalues
            .iter()
            .copied()
            .filter(|&e| e <= ceiling && predicted.iter().all(|p| (e - p).abs() > tol))
            .collect();
        SpectralComparison {
            levels,
            unexpected,
            tolerance: tol,
        }
    }
}

/// Lowest `k` levels of −½ d²/dx² + V at `grid` and its refinement.
pub fn fd_eigensolve<V>(
    potential: V,
    grid: &Grid,
    k: usize,
    mode: Execution,
) -> Result<SpectrumReport>
where
    V: Fn(f64) -> Result<f64> + Sync + Send,
{
    let fine_grid = grid.refined();
    let xs = fine_grid.nodes();
    // end points carry the Dirichlet condition and are never sampled
    let last = xs.len() - 1;
    let samples = exec::try_map(mode, &(0..xs.len()).collect::<Vec<_>>(), |&i| {
        if i == 0 || i == last {
            Ok(0.0)
        } else {
            potential(xs[i])
        }
    })?;
    let coarse_samples: Vec<f64> = samples.iter().step_by(2).copied().collect();

    let fine = discretize(&fine_grid, &samples)?;
    let coarse = discretize(grid, &coarse_samples)?;
    let (fine_levels, coarse_levels) = exec::join(mode, || fine.lowest(k), || coarse.lowest(k));
    let (fine_levels, coarse_levels) = (fine_levels?, coarse_levels?);

    let spread = fine_levels
        .iter()
        .zip(&coarse_levels)
        .map(|(f, c)| (f - c).abs())
        .fold(0.0, f64::max);
    Ok(SpectrumReport {
        eigenvalues: fine_levels,
        coarse_eigenvalues: coarse_levels,
        certified_tolerance: (SAFETY_FACTOR * spread).max(TOLERANCE_FLOOR),
        n_points: grid.n_points(),
    })
}
