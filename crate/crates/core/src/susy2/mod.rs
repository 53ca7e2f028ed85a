//! Second-order transformations V₂ = V₀ − (ln W)''.
//!
//! Three constructions share the [`WronskianEvaluator`] interface: two real
//! seeds ([`RealTransform`]), one complex seed with its conjugate
//! ([`complex_case_potential`]) and the confluent integral Wronskian
//! ([`confluent_potential`]).

mod classify;
mod complex;
mod confluent;
mod real;

use std::fmt;
use std::sync::Arc;

use crate::error::Result;
use crate::potential::{PartnerPotential, SpectralDesign};
use crate::susy1::ensure_nodeless;
use crate::trm::TrmParams;

pub use classify::validate_real_case;
pub use complex::{complex_case_potential, wronskian_complex};
pub use confluent::{
    confluent_potential, confluent_wronskian, ConfluentWronskian, NEAR_BOUNDARY_W0,
};
pub use real::{map_eigenfunction_2, new_bound_states_2, wronskian_real, RealTransform};

/// W, W' and W'' at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WronskianSample {
    pub w: f64,
    pub dw: f64,
    pub d2w: f64,
}

/// Callable Wronskian with analytic first and second derivatives.
#[derive(Clone)]
pub struct WronskianEvaluator {
    inner: Arc<dyn Fn(f64) -> Result<WronskianSample> + Send + Sync>,
}

impl fmt::Debug for WronskianEvaluator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("WronskianEvaluator")
    }
}

impl WronskianEvaluator {
    pub fn from_fn<F>(f: F) -> Self
    where
        F: Fn(f64) -> Result<WronskianSample> + Send + Sync + 'static,
    {
        Self { inner: Arc::new(f) }
    }

    pub fn eval(&self, x: f64) -> Result<WronskianSample> {
        crate::solution::check_domain(x)?;
        (self.inner)(x)
    }
}

/// V₂ = V₀ − W''/W + (W'/W)²; fails if W changes sign on the check grid.
pub fn second_order_potential(
    p: &TrmParams,
    w: &WronskianEvaluator,
    design: SpectralDesign,
) -> Result<PartnerPotential> {
    ensure_nodeless(|x| Ok(w.eval(x)?.w), "the Wronskian")?;
    let p = *p;
    let w = w.clone();
    Ok(PartnerPotential::new(
        move |x| {
            let s = w.eval(x)?;
            let r = s.dw / s.w;
            Ok(p.v0(x) - s.d2w / s.w + r * r)
        },
        design,
    ))
}
