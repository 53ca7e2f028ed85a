//! Endpoint-convergence probe for square-integrability.

use std::f64::consts::PI;

use crate::error::Result;
use crate::oracle::quadrature::{gl32_panel, quadrature};
use crate::solution::SolutionEvaluator;

/// Insets δ at which ∫_δ^{π−δ} |f|² is compared.
pub const PROBE_INSETS: [f64; 3] = [1e-3, 1e-4, 1e-5];

/// Relative spread below which the integrals count as converged.
pub const PROBE_TOLERANCE: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrabilityProbe {
    /// ∫_δ^{π−δ} |f|² for each δ in [`PROBE_INSETS`].
    pub integrals: [f64; 3],
    pub square_integrable: bool,
}

/// Inner edge of the adaptively integrated middle section.
const CORE_INSET: f64 = 0.1;
/// Geometric panels per decade next to each endpoint.
const PANELS_PER_DECADE: usize = 4;

/// ∫ over [inner, outer] and its mirror image next to π, on geometric
/// Gauss–Legendre panels.
fn end_layers<F>(density: &F, inner: f64, outer: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let decades = (outer / inner).log10();
    let panels = ((decades * PANELS_PER_DECADE as f64).round() as usize).max(1);
    let ratio = (outer / inner).powf(1.0 / panels as f64);
    let mut sum = 0.0;
    let mut lo = inner;
    for k in 0..panels {
        let hi = if k + 1 == panels { outer } else { lo * ratio };
        sum += gl32_panel(density, lo, hi)?;
        sum += gl32_panel(density, PI - hi, PI - lo)?;
        lo = hi;
    }
    Ok(sum)
}

pub fn probe_square_integrability(f: &SolutionEvaluator) -> Result<IntegrabilityProbe> {
    let density = |x: f64| Ok(f.eval(x)?.value.norm_sqr());
    let mut integrals = [0.0; 3];
    let mut total = quadrature(density, CORE_INSET, PI - CORE_INSET)?
        + end_layers(&density, PROBE_INSETS[0], CORE_INSET)?;
    integrals[0] = total;
    for k in 1..PROBE_INSETS.len() {
        total += end_layers(&density, PROBE_INSETS[k], PROBE_INSETS[k - 1])?;
        integrals[k] = total;
    }
    let finite = integrals.iter().all(|v| v.is_finite());
    let reference = integrals[2].abs();
    let spread = integrals
        .iter()
        .map(|v| (v - integrals[2]).abs())
        .fold(0.0, f64::max);
    Ok(IntegrabilityProbe {
        integrals,
        square_integrable: finite && reference > 0.0 && spread <= PROBE_TOLERANCE * reference,
    })
}
