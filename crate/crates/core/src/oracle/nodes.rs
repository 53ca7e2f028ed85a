use crate::error::Result;
use crate::exec::{self, Execution};
use crate::solution::SolutionEvaluator;

use super::grid::Grid;

/// Samples below this fraction of the local magnitude are treated as zero.
const GRAZE_FRACTION: f64 = 1e-12;
const LOCAL_WINDOW: usize = 3;

/// Interior zeros of the real part of `f`, located by sign changes across
/// `grid` and refined by bisection.
pub fn node_positions(f: &SolutionEvaluator, grid: &Grid, mode: Execution) -> Result<Vec<f64>> {
    let xs = grid.nodes();
    let values = exec::try_map(mode, &xs, |&x| Ok::<_, crate::Error>(f.eval(x)?.value.re))?;

    let n = values.len();
    // exact zeros carry no sign; they are bracketed by their nonzero neighbours
    let nonzero: Vec<usize> = (0..n).filter(|&k| values[k] != 0.0).collect();
    let mut nodes = Vec::new();
    for pair in nonzero.windows(2) {
        let (i, j) = (pair[0], pair[1]);
        let (lhs, rhs) = (values[i], values[j]);
        if lhs.signum() == rhs.signum() {
            continue;
        }
        let lo = i.saturating_sub(LOCAL_WINDOW);
        let hi = (j + LOCAL_WINDOW).min(n - 1);
        let local = values[lo..=hi].iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        if lhs.abs() < GRAZE_FRACTION * local && rhs.abs() < GRAZE_FRACTION * local {
            continue;
        }
        nodes.push(bisect(f, xs[i], xs[j], lhs)?);
    }
    Ok(nodes)
}

fn bisect(f: &SolutionEvaluator, mut a: f64, mut b: f64, fa: f64) -> Result<f64> {
    let sa = fa.signum();
    for _ in 0..60 {
        let m = 0.5 * (a + b);
        if b - a < 1e-14 {
            break;
        }
        let fm = f.eval(m)?.value.re;
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == sa {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Number of interior nodes of `f` on `grid`.
pub fn count_nodes(f: &SolutionEvaluator, grid: &Grid) -> Result<usize> {
    count_nodes_with(f, grid, Execution::default())
}

pub fn count_nodes_with(f: &SolutionEvaluator, grid: &Grid, mode: Execution) -> Result<usize> {
    Ok(node_positions(f, grid, mode)?.len())
}
