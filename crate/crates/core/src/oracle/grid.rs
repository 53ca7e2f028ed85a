use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Uniform grid on [δ, π − δ].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    n_points: usize,
    delta: f64,
}

impl Grid {
    pub const DEFAULT_POINTS: usize = 4001;
    pub const DEFAULT_DELTA: f64 = 1e-4;
    pub const MIN_POINTS: usize = 501;

    pub fn new(n_points: usize, delta: f64) -> Result<Self> {
        if n_points < Self::MIN_POINTS {
            return Err(Error::InvalidParameter(format!(
                "grid needs at least {} points (got {n_points})",
                Self::MIN_POINTS
            )));
        }
        if !(delta > 0.0 && delta <= 1e-3) {
            return Err(Error::InvalidParameter(format!(
                "grid inset delta must lie in (0, 1e-3] (got {delta})"
            )));
        }
        Ok(Self { n_points, delta })
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn spacing(&self) -> f64 {
        (PI - 2.0 * self.delta) / (self.n_points - 1) as f64
    }

    pub fn node(&self, k: usize) -> f64 {
        if k + 1 == self.n_points {
            PI - self.delta
        } else {
            self.delta + k as f64 * self.spacing()
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n_points).map(|k| self.node(k)).collect()
    }

    /// Same end points, half the spacing (2n − 1 points).
    pub fn refined(&self) -> Grid {
        Grid {
            n_points: 2 * self.n_points - 1,
            delta: self.delta,
        }
    }
}

impl Default for Grid {
    fn default() -> Self {
        Self {
            n_points: Self::DEFAULT_POINTS,
            delta: Self::DEFAULT_DELTA,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(Grid::new(500, 1e-4).is_err());
        assert!(Grid::new(501, 2e-3).is_err());
        assert!(Grid::new(501, 0.0).is_err());
        let g = Grid::new(501, 1e-4).unwrap();
        assert_eq!(g.node(0), 1e-4);
        assert_eq!(g.node(500), PI - 1e-4);
    }

    #[test]
    fn refined_grid_contains_coarse_nodes() {
        let g = Grid::new(1001, 1e-4).unwrap();
        let r = g.refined();
        assert_eq!(r.n_points(), 2001);
        for k in [0, 1, 17, 500, 1000] {
            assert!((g.node(k) - r.node(2 * k)).abs() < 1e-14);
        }
    }
}
