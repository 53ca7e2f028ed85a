//! First-order transformations V₁ = V₀ − (ln u)''.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::oracle::probe_square_integrability;
use crate::potential::{
    shifted_coefficient, EndpointCoefficients, PartnerPotential, Provenance, SpectralDesign,
    LEVEL_POOL,
};
use crate::seed::{SeedSpec, Side};
use crate::solution::{Sample, SolutionEvaluator, SolutionKind};
use crate::trm::{self, TrmParams, SPECTRAL_TOLERANCE};

/// Points of the uniform grid on which seeds and Wronskians must keep their sign.
pub const CHECK_POINTS: usize = 2000;
/// Endpoint inset of that grid.
pub const CHECK_INSET: f64 = 1e-4;

const ZERO_FRACTION: f64 = 1e-12;

pub(crate) fn check_grid() -> Vec<f64> {
    let h = (PI - 2.0 * CHECK_INSET) / (CHECK_POINTS - 1) as f64;
    (0..CHECK_POINTS)
        .map(|k| CHECK_INSET + k as f64 * h)
        .collect()
}

/// Fails when `f` changes sign or nearly vanishes on the check grid.
pub(crate) fn ensure_nodeless<F>(f: F, what: &str) -> Result<()>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let xs = check_grid();
    let values = exec::try_map(Execution::default(), &xs, |&x| f(x))?;
    for (k, window) in values.windows(2).enumerate() {
        if window[0].signum() != window[1].signum() || window[0] == 0.0 {
            return Err(Error::SingularTransform(format!(
                "{what} changes sign near x = {:.6}",
                xs[k]
            )));
        }
    }
    for k in 0..values.len() {
        let lo = k.saturating_sub(3);
        let hi = (k + 3).min(values.len() - 1);
        let local = values[lo..=hi].iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        if values[k].abs() < ZERO_FRACTION * local || !values[k].is_finite() {
            return Err(Error::SingularTransform(format!(
                "{what} nearly vanishes at x = {:.6}",
                xs[k]
            )));
        }
    }
    Ok(())
}

fn seed_spec_of(seed: &SolutionEvaluator, epsilon: f64) -> Option<SeedSpec> {
    match seed.kind() {
        SolutionKind::BoundState { n } => Some(SeedSpec::Bound { n }),
        SolutionKind::General { lambda } => Some(SeedSpec::General { epsilon, lambda }),
        SolutionKind::Left => Some(SeedSpec::Left { epsilon }),
        SolutionKind::Right => Some(SeedSpec::Right { epsilon }),
        _ => None,
    }
}

fn first_order_design(p: &TrmParams, seed: SeedSpec, epsilon: f64) -> Result<SpectralDesign> {
    let e0 = p.bound_energy(0);
    let levels = p.spectrum(LEVEL_POOL);
    let (provenance, spectrum) = match seed {
        SeedSpec::Bound { n: 0 } => {
            if (epsilon - e0).abs() > SPECTRAL_TOLERANCE {
                return Err(Error::Precondition(format!(
                    "deleting the ground state needs epsilon = E0 = {e0}"
                )));
            }
            (Provenance::DeleteGround, levels[1..].to_vec())
        }
        SeedSpec::Bound { n } => {
            return Err(Error::SingularTransform(format!(
                "bound state {n} has {n} nodes; only the ground state can be deleted at first order"
            )))
        }
        _ if epsilon >= e0 => {
            return Err(Error::Precondition(format!(
                "first-order seeds need epsilon < E0 = {e0}, got {epsilon}"
            )))
        }
        seed if seed.is_boundary() => (Provenance::FirstOrderIsospectral, levels),
        SeedSpec::General { lambda, .. } if lambda > 0.0 => {
            let mut s = levels;
            s.push(epsilon);
            (Provenance::CreateGround, s)
        }
        SeedSpec::General { lambda, .. } => {
            return Err(Error::SingularTransform(format!(
                "a seed below E0 with lambda = {lambda} < 0 has one node"
            )))
        }
        SeedSpec::Complex { .. } => {
            return Err(Error::Precondition("first-order seeds must be real".into()))
        }
        _ => unreachable!("left and right seeds are boundary seeds"),
    };
    let a = p.a();
    let (left, right) = seed.endpoints();
    let coefficients = EndpointCoefficients::new(
        shifted_coefficient(a, left.exponent(a)),
        shifted_coefficient(a, right.exponent(a)),
    );
    Ok(SpectralDesign::new(provenance, spectrum, coefficients))
}

/// V₁(x) = 2ε − V₀(x) + (u'/u)², the seed's second derivative having been
/// eliminated with the Schrödinger equation.
pub fn first_order_potential(
    p: &TrmParams,
    seed: &SolutionEvaluator,
    epsilon: f64,
) -> Result<PartnerPotential> {
    let energy = seed.real_energy()?;
    if (energy - epsilon).abs() > SPECTRAL_TOLERANCE * epsilon.abs().max(1.0) {
        return Err(Error::Precondition(format!(
            "seed energy {energy} differs from epsilon {epsilon}"
        )));
    }
    let spec = seed_spec_of(seed, epsilon).ok_or_else(|| {
        Error::Precondition(format!(
            "{} cannot seed a first-order transformation",
            seed.kind()
        ))
    })?;
    let design = first_order_design(p, spec, epsilon)?;
    ensure_nodeless(|x| Ok(seed.eval(x)?.value.re), "the seed")?;

    let p = *p;
    let seed = seed.clone();
    Ok(PartnerPotential::new(
        move |x| {
            let (u, du) = seed.eval_real(x)?;
            let w = du / u;
            Ok(2.0 * epsilon - p.v0(x) + w * w)
        },
        design,
    ))
}

/// Remove E₀ using ψ₀ as seed (a → a + 1).
pub fn delete_ground(p: &TrmParams) -> Result<PartnerPotential> {
    let seed = trm::bound_state(p, 0)?;
    first_order_potential(p, &seed, p.bound_energy(0))
}

/// Add a level at ε < E₀ using ψ_L + λψ_R with λ > 0.
pub fn create_ground(p: &TrmParams, epsilon: f64, lambda: f64) -> Result<PartnerPotential> {
    check_below_ground(p, epsilon)?;
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::Precondition(format!(
            "creating a ground state needs lambda > 0, got {lambda}"
        )));
    }
    let seed = trm::general_solution(p, epsilon, lambda)?;
    first_order_potential(p, &seed, epsilon)
}

/// Isospectral partner from ψ_L or ψ_R at ε < E₀.
pub fn isospectral(p: &TrmParams, epsilon: f64, side: Side) -> Result<PartnerPotential> {
    check_below_ground(p, epsilon)?;
    let seed = SeedSpec::from_side(side, epsilon).build(p)?;
    first_order_potential(p, &seed, epsilon)
}

fn check_below_ground(p: &TrmParams, epsilon: f64) -> Result<()> {
    let e0 = p.bound_energy(0);
    if !(epsilon < e0) {
        return Err(Error::Precondition(format!(
            "epsilon must lie below E0 = {e0}, got {epsilon}"
        )));
    }
    Ok(())
}

/// A₁⁺ψ/√(2(E − ε)) = [−ψ' + (u'/u)ψ]/√(2(E − ε)).
pub fn map_eigenfunction_1(
    seed: &SolutionEvaluator,
    epsilon: f64,
    psi: &SolutionEvaluator,
    energy: f64,
) -> Result<SolutionEvaluator> {
    let gap = energy - epsilon;
    if gap.abs() <= SPECTRAL_TOLERANCE {
        return Err(Error::DegenerateEnergy(energy));
    }
    let norm = (2.0 * gap.abs()).sqrt();
    let n = match psi.kind() {
        SolutionKind::BoundState { n } => Some(n),
        _ => None,
    };
    let (seed, source) = (seed.clone(), psi.clone());
    let mapped = SolutionEvaluator::from_fn(
        num_complex::Complex64::new(energy, 0.0),
        SolutionKind::Mapped { n },
        move |x| {
            let (u, du) = seed.eval_real(x)?;
            let (f, df) = source.eval_real(x)?;
            let w = du / u;
            let value = (-df + w * f) / norm;
            // ψ'' = 2(V₀ − E)ψ and (u'/u)' = 2(V₀ − ε) − (u'/u)²; V₀ cancels
            let derivative = ((2.0 * gap - w * w) * f + w * df) / norm;
            Ok(Sample::real(value, derivative))
        },
    )
    .with_canonical_real(true)
    .with_square_integrable(psi.square_integrable())
    .with_normalized(psi.is_normalized());
    Ok(mapped)
}

/// The formal eigenfunction 1/u at the factorization energy, normalized when
/// it is square-integrable.
pub fn missing_state(seed: &SolutionEvaluator) -> Result<SolutionEvaluator> {
    ensure_nodeless(|x| Ok(seed.eval(x)?.value.re), "the seed")?;
    let source = seed.clone();
    let raw = SolutionEvaluator::from_fn(seed.energy(), SolutionKind::Missing, move |x| {
        let (u, du) = source.eval_real(x)?;
        Ok(Sample::real(1.0 / u, -du / (u * u)))
    })
    .with_canonical_real(true);
    let probe = probe_square_integrability(&raw)?;
    if probe.square_integrable {
        let scale = 1.0 / probe.integrals[2].sqrt();
        Ok(raw
            .scaled(scale)
            .with_square_integrable(Some(true))
            .with_normalized(true))
    } else {
        Ok(raw.with_square_integrable(Some(false)))
    }
}
