use std::f64::consts::PI;

use super::{second_order_potential, WronskianEvaluator, WronskianSample};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::oracle::quadrature::gl32_panel;
use crate::potential::{
    shifted_coefficient, EndpointCoefficients, PartnerPotential, Provenance, SpectralDesign,
    LEVEL_POOL,
};
use crate::solution::SolutionEvaluator;
use crate::trm::{self, TrmParams};

/// Values of w₀ this close to 0 or −1 (but not equal) trigger a warning.
pub const NEAR_BOUNDARY_W0: f64 = 1e-6;

/// Panels of the cached cumulative integral.
const PANELS: usize = 4000;

/// W(x) = w₀ + ∫₀ˣ ψ² with ψ a normalized bound state. The cumulative
/// integral is tabulated on a uniform panel grid from both ends; between
/// nodes one more Gauss–Legendre panel completes it exactly.
#[derive(Debug, Clone)]
pub struct ConfluentWronskian {
    psi: SolutionEvaluator,
    w0: f64,
    /// ∫₀^{x_k} ψ².
    from_left: Vec<f64>,
    /// ∫_{x_k}^π ψ².
    from_right: Vec<f64>,
    total: f64,
}

impl ConfluentWronskian {
    fn density(&self, x: f64) -> Result<f64> {
        Ok(self.psi.eval(x)?.value.re.powi(2))
    }

    fn panel(&self, lo: f64, hi: f64) -> Result<f64> {
        if hi <= lo {
            return Ok(0.0);
        }
        gl32_panel(&|x| self.density(x), lo, hi)
    }

    /// ∫₀^π ψ² as tabulated (1 up to quadrature error).
    pub fn total(&self) -> f64 {
        self.total
    }

    pub fn w0(&self) -> f64 {
        self.w0
    }

    /// ∫₀ˣ ψ², rescaled so that the full integral is exactly 1.
    pub fn cumulative(&self, x: f64) -> Result<f64> {
        let h = PI / PANELS as f64;
        let k = ((x / h) as usize).min(PANELS - 1);
        if x < 0.5 * PI {
            Ok((self.from_left[k] + self.panel(k as f64 * h, x)?) / self.total)
        } else {
            let right = self.from_right[k + 1] + self.panel(x, (k + 1) as f64 * h)?;
            Ok(1.0 - right / self.total)
        }
    }

    pub fn sample(&self, x: f64) -> Result<WronskianSample> {
        let h = PI / PANELS as f64;
        let k = ((x / h) as usize).min(PANELS - 1);
        // each half is computed from its own end so that W keeps full relative
        // accuracy where it vanishes (w₀ = 0 at the left, w₀ = −1 at the right)
        let w = if x < 0.5 * PI {
            self.w0 + (self.from_left[k] + self.panel(k as f64 * h, x)?) / self.total
        } else {
            (self.w0 + 1.0)
                - (self.from_right[k + 1] + self.panel(x, (k + 1) as f64 * h)?) / self.total
        };
        let s = self.psi.eval(x)?;
        let (f, df) = (s.value.re, s.derivative.re);
        Ok(WronskianSample {
            w,
            dw: f * f / self.total,
            d2w: 2.0 * f * df / self.total,
        })
    }

    pub fn evaluator(&self) -> WronskianEvaluator {
        let this = self.clone();
        WronskianEvaluator::from_fn(move |x| this.sample(x))
    }
}

fn check_w0(w0: f64) -> Result<()> {
    if !w0.is_finite() {
        return Err(Error::InvalidParameter("w0 must be finite".into()));
    }
    if w0 > -1.0 && w0 < 0.0 {
        return Err(Error::Precondition(format!(
            "w0 = {w0} lies in (-1, 0) and makes the Wronskian vanish inside (0, pi)"
        )));
    }
    Ok(())
}

pub fn confluent_wronskian(psi: &SolutionEvaluator, w0: f64) -> Result<ConfluentWronskian> {
    check_w0(w0)?;
    let h = PI / PANELS as f64;
    let density = |x: f64| Ok(psi.eval(x)?.value.re.powi(2));
    let indices: Vec<usize> = (0..PANELS).collect();
    let panels = exec::try_map(Execution::default(), &indices, |&k| {
        gl32_panel(&density, k as f64 * h, (k + 1) as f64 * h)
    })?;
    let mut from_left = vec![0.0; PANELS + 1];
    for k in 0..PANELS {
        from_left[k + 1] = from_left[k] + panels[k];
    }
    let mut from_right = vec![0.0; PANELS + 1];
    for k in (0..PANELS).rev() {
        from_right[k] = from_right[k + 1] + panels[k];
    }
    let total = from_left[PANELS];
    if !(total > 0.0 && total.is_finite()) {
        return Err(Error::Numerical("confluent seed has zero norm".into()));
    }
    Ok(ConfluentWronskian {
        psi: psi.clone(),
        w0,
        from_left,
        from_right,
        total,
    })
}

/// Confluent partner from the bound state ψ_j. Isospectral for
/// w₀ ∈ (−∞, −1) ∪ (0, ∞); w₀ = 0 or −1 removes E_j.
pub fn confluent_potential(p: &TrmParams, j: usize, w0: f64) -> Result<PartnerPotential> {
    check_w0(w0)?;
    let psi = trm::bound_state(p, j)?;
    let wronskian = confluent_wronskian(&psi, w0)?;
    let a = p.a();
    let base = 0.5 * a * (a + 1.0);
    let vanishing = shifted_coefficient(a, 2.0 * a + 3.0);
    let mut spectrum = p.spectrum(LEVEL_POOL);
    let (provenance, coefficients) = if w0 == 0.0 {
        spectrum.remove(j);
        (
            Provenance::ConfluentDelete,
            EndpointCoefficients::new(vanishing, base),
        )
    } else if w0 == -1.0 {
        spectrum.remove(j);
        (
            Provenance::ConfluentDelete,
            EndpointCoefficients::new(base, vanishing),
        )
    } else {
        (
            Provenance::ConfluentIsospectral,
            EndpointCoefficients::new(base, base),
        )
    };
    let design = SpectralDesign::new(provenance, spectrum, coefficients);
    let potential = second_order_potential(p, &wronskian.evaluator(), design)?;
    let near = |target: f64| w0 != target && (w0 - target).abs() < NEAR_BOUNDARY_W0;
    if near(0.0) || near(-1.0) {
        Ok(potential.with_warning(format!(
            "w0 = {w0} is close to a deletion value; the level E{j} is nearly unbound and may show up as a spurious oracle level"
        )))
    } else {
        Ok(potential)
    }
}
