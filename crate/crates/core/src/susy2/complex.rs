use num_complex::Complex64;

use super::{second_order_potential, WronskianEvaluator, WronskianSample};
use crate::error::{Error, Result};
use crate::potential::{
    shifted_coefficient, wronskian_exponent, EndpointCoefficients, PartnerPotential, Provenance,
    SpectralDesign, LEVEL_POOL,
};
use crate::seed::{SeedSpec, Side};
use crate::solution::SolutionEvaluator;
use crate::trm::TrmParams;

/// w = Im(u ū') with w' = 2 Im(ε)|u|² and w'' = 4 Im(ε) Re(ū u').
pub fn wronskian_complex(u: &SolutionEvaluator, epsilon: Complex64) -> WronskianEvaluator {
    let u = u.clone();
    let im = epsilon.im;
    WronskianEvaluator::from_fn(move |x| {
        let s = u.eval_raw(x)?;
        Ok(WronskianSample {
            w: (s.value * s.derivative.conj()).im,
            dw: 2.0 * im * s.value.norm_sqr(),
            d2w: 4.0 * im * (s.value.conj() * s.derivative).re,
        })
    })
}

/// Isospectral partner built from ψ_L or ψ_R at a complex energy.
pub fn complex_case_potential(
    p: &TrmParams,
    epsilon: Complex64,
    side: Side,
) -> Result<PartnerPotential> {
    if epsilon.im == 0.0 || !epsilon.im.is_finite() || !epsilon.re.is_finite() {
        return Err(Error::Precondition(format!(
            "the complex case needs a finite energy with nonzero imaginary part, got {epsilon}"
        )));
    }
    let seed = SeedSpec::Complex { epsilon, side };
    let u = seed.build(p)?;
    let a = p.a();
    let (left, right) = seed.endpoints();
    let design = SpectralDesign::new(
        Provenance::ComplexIsospectral,
        p.spectrum(LEVEL_POOL),
        EndpointCoefficients::new(
            shifted_coefficient(a, wronskian_exponent(a, left, left)),
            shifted_coefficient(a, wronskian_exponent(a, right, right)),
        ),
    );
    second_order_potential(p, &wronskian_complex(&u, epsilon), design)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::susy1::check_grid;

    #[test]
    fn w_is_monotone() {
        let q = TrmParams::new(2.0, 50.0).unwrap();
        for (eps, side) in [
            (Complex64::new(-16.72, 1.0), Side::L),
            (Complex64::new(0.0, -20.0), Side::R),
        ] {
            let u = SeedSpec::Complex { epsilon: eps, side }.build(&q).unwrap();
            let w = wronskian_complex(&u, eps);
            for x in check_grid() {
                assert_eq!(w.eval(x).unwrap().dw.signum(), eps.im.signum());
            }
        }
    }

    #[test]
    fn rejects_real_energy() {
        let q = TrmParams::new(2.0, 50.0).unwrap();
        assert!(matches!(
            complex_case_potential(&q, Complex64::new(-10.0, 0.0), Side::L),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn is_isospectral_by_prediction() {
        let q = TrmParams::new(2.0, 50.0).unwrap();
        let v = complex_case_potential(&q, Complex64::new(0.0, 20.0), Side::L).unwrap();
        assert_eq!(v.predicted_spectrum(), &q.spectrum(8)[..]);
        assert_eq!(
            v.singular_coefficients(),
            EndpointCoefficients::new(10.0, 0.0)
        );
    }
}
