use num_complex::Complex64;

use super::{second_order_potential, validate_real_case, WronskianEvaluator, WronskianSample};
use crate::error::{Error, Result};
use crate::oracle::probe_square_integrability;
use crate::potential::PartnerPotential;
use crate::seed::SeedSpec;
use crate::solution::{Sample, SolutionEvaluator, SolutionKind};
use crate::trm::{self, TrmParams, SPECTRAL_TOLERANCE};

/// W = u₁u₂' − u₁'u₂ with W' = 2(ε₁ − ε₂)u₁u₂ and
/// W'' = 2(ε₁ − ε₂)(u₁'u₂ + u₁u₂').
pub fn wronskian_real(
    u1: &SolutionEvaluator,
    u2: &SolutionEvaluator,
    eps1: f64,
    eps2: f64,
) -> Result<WronskianEvaluator> {
    if eps1 == eps2 {
        return Err(Error::DegenerateEnergy(eps1));
    }
    let (u1, u2) = (u1.clone(), u2.clone());
    let c = 2.0 * (eps1 - eps2);
    Ok(WronskianEvaluator::from_fn(move |x| {
        let (f, df) = u1.eval_real(x)?;
        let (g, dg) = u2.eval_real(x)?;
        Ok(WronskianSample {
            w: f * dg - df * g,
            dw: c * f * g,
            d2w: c * (df * g + f * dg),
        })
    }))
}

/// B⁺ψ/√((E − ε₁)(E − ε₂)) = ½ W(u₁, u₂, ψ)/W(u₁, u₂) / √((E − ε₁)(E − ε₂)).
///
/// With u'' = 2(V₀ − ε)u substituted, the third-order Wronskian reduces to
/// 2[(ε₁ − E)u₁u₂' − (ε₂ − E)u₁'u₂]ψ + 2(ε₂ − ε₁)u₁u₂ψ', and its derivative
/// to 2(ε₁ − ε₂)u₁'u₂'ψ + 2[(ε₂ − E)u₁u₂' − (ε₁ − E)u₁'u₂]ψ'.
#[allow(clippy::too_many_arguments)]
pub fn map_eigenfunction_2(
    w: &WronskianEvaluator,
    u1: &SolutionEvaluator,
    u2: &SolutionEvaluator,
    eps1: f64,
    eps2: f64,
    psi: &SolutionEvaluator,
    energy: f64,
) -> Result<SolutionEvaluator> {
    for eps in [eps1, eps2] {
        if (energy - eps).abs() <= SPECTRAL_TOLERANCE {
            return Err(Error::DegenerateEnergy(energy));
        }
    }
    let norm = ((energy - eps1) * (energy - eps2)).abs().sqrt();
    let n = match psi.kind() {
        SolutionKind::BoundState { n } => Some(n),
        _ => None,
    };
    let (w, u1, u2, source) = (w.clone(), u1.clone(), u2.clone(), psi.clone());
    Ok(SolutionEvaluator::from_fn(
        Complex64::new(energy, 0.0),
        SolutionKind::Mapped { n },
        move |x| {
            let s = w.eval(x)?;
            let (f, df) = u1.eval_real(x)?;
            let (g, dg) = u2.eval_real(x)?;
            let (h, dh) = source.eval_real(x)?;
            let w3 = 2.0 * ((eps1 - energy) * f * dg - (eps2 - energy) * df * g) * h
                + 2.0 * (eps2 - eps1) * f * g * dh;
            let dw3 = 2.0 * (eps1 - eps2) * df * dg * h
                + 2.0 * ((eps2 - energy) * f * dg - (eps1 - energy) * df * g) * dh;
            let value = 0.5 * w3 / s.w / norm;
            let derivative = 0.5 * (dw3 * s.w - w3 * s.dw) / (s.w * s.w) / norm;
            Ok(Sample::real(value, derivative))
        },
    )
    .with_canonical_real(true)
    .with_square_integrable(psi.square_integrable())
    .with_normalized(psi.is_normalized()))
}

fn over_wronskian(
    w: &WronskianEvaluator,
    u: &SolutionEvaluator,
    energy: f64,
    index: u8,
) -> Result<SolutionEvaluator> {
    let (w, u) = (w.clone(), u.clone());
    let raw = SolutionEvaluator::from_fn(
        Complex64::new(energy, 0.0),
        SolutionKind::NewState { index },
        move |x| {
            let s = w.eval(x)?;
            let (f, df) = u.eval_real(x)?;
            Ok(Sample::real(f / s.w, (df * s.w - f * s.dw) / (s.w * s.w)))
        },
    )
    .with_canonical_real(true);
    let probe = probe_square_integrability(&raw)?;
    if probe.square_integrable {
        Ok(raw
            .scaled(1.0 / probe.integrals[2].sqrt())
            .with_square_integrable(Some(true))
            .with_normalized(true))
    } else {
        Ok(raw.with_square_integrable(Some(false)))
    }
}

/// The formal eigenfunctions u₂/W (energy ε₁) and u₁/W (energy ε₂), each
/// normalized when square-integrable.
pub fn new_bound_states_2(
    w: &WronskianEvaluator,
    u1: &SolutionEvaluator,
    u2: &SolutionEvaluator,
) -> Result<(SolutionEvaluator, SolutionEvaluator)> {
    let eps1 = u1.real_energy()?;
    let eps2 = u2.real_energy()?;
    Ok((
        over_wronskian(w, u2, eps1, 1)?,
        over_wronskian(w, u1, eps2, 2)?,
    ))
}

/// A validated real-case transformation with its seeds and Wronskian.
#[derive(Debug, Clone)]
pub struct RealTransform {
    params: TrmParams,
    seeds: (SeedSpec, SeedSpec),
    u1: SolutionEvaluator,
    u2: SolutionEvaluator,
    eps1: f64,
    eps2: f64,
    wronskian: WronskianEvaluator,
    potential: PartnerPotential,
}

impl RealTransform {
    pub fn new(p: &TrmParams, seed1: &SeedSpec, seed2: &SeedSpec) -> Result<Self> {
        let design = validate_real_case(p, seed1, seed2)?;
        let (eps1, eps2) = (seed1.real_energy(p)?, seed2.real_energy(p)?);
        let u1 = seed1.build(p)?;
        let u2 = seed2.build(p)?;
        let wronskian = wronskian_real(&u1, &u2, eps1, eps2)?;
        let potential = second_order_potential(p, &wronskian, design)?;
        Ok(Self {
            params: *p,
            seeds: (*seed1, *seed2),
            u1,
            u2,
            eps1,
            eps2,
            wronskian,
            potential,
        })
    }

    pub fn potential(&self) -> &PartnerPotential {
        &self.potential
    }

    pub fn wronskian(&self) -> &WronskianEvaluator {
        &self.wronskian
    }

    pub fn seeds(&self) -> (&SolutionEvaluator, &SolutionEvaluator) {
        (&self.u1, &self.u2)
    }

    pub fn seed_specs(&self) -> (SeedSpec, SeedSpec) {
        self.seeds
    }

    pub fn energies(&self) -> (f64, f64) {
        (self.eps1, self.eps2)
    }

    /// Image of the bound state ψ_n.
    pub fn map_eigenfunction(&self, n: usize) -> Result<SolutionEvaluator> {
        let psi = trm::bound_state(&self.params, n)?;
        map_eigenfunction_2(
            &self.wronskian,
            &self.u1,
            &self.u2,
            self.eps1,
            self.eps2,
            &psi,
            self.params.bound_energy(n),
        )
    }

    pub fn new_states(&self) -> Result<(SolutionEvaluator, SolutionEvaluator)> {
        new_bound_states_2(&self.wronskian, &self.u1, &self.u2)
    }
}
