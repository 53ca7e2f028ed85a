//! Complex gamma and Gauss hypergeometric functions.
//!
//! The gamma function uses the Lanczos approximation (g = 7, nine
//! coefficients) with the reflection formula for `Re z < 1/2`. The
//! hypergeometric function is evaluated by its Gauss series only; callers
//! that need arguments on the unit circle go through
//! [`hyp2f1_unit_circle`], which demands `Re(γ − α − β) > 0`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::SpecfunError;

/// Distance below which an argument is treated as sitting on an integer.
pub const POLE_TOLERANCE: f64 = 1e-12;

/// Relative size of the last retained series term.
const SERIES_RELATIVE_TOLERANCE: f64 = 1e-16;

/// Hard cap on the number of series terms.
pub const MAX_SERIES_TERMS: usize = 200_000;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn check_finite(z: Complex64) -> Result<(), SpecfunError> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(SpecfunError::NonFinite)
    }
}

/// Returns `Some(n)` when `z` lies within [`POLE_TOLERANCE`] of `-n`, `n ≥ 0`.
pub fn nonpositive_integer(z: Complex64) -> Option<u64> {
    let nearest = z.re.round();
    if nearest <= 0.0 && (z - Complex64::new(nearest, 0.0)).norm() < POLE_TOLERANCE {
        Some((-nearest) as u64)
    } else {
        None
    }
}

/// `ln sin(w)` without overflowing for large `|Im w|`. The branch is
/// irrelevant to callers, who only exponentiate the result.
fn ln_sin(w: Complex64) -> Complex64 {
    let i = Complex64::i();
    let two_i = Complex64::new(0.0, 2.0);
    if w.im >= 0.0 {
        // sin w = e^{-iw} (e^{2iw} - 1) / 2i
        -i * w + ((2.0 * i * w).exp() - 1.0).ln() - two_i.ln()
    } else {
        // sin w = e^{iw} (1 - e^{-2iw}) / 2i
        i * w + (1.0 - (-2.0 * i * w).exp()).ln() - two_i.ln()
    }
}

fn ln_gamma_unchecked(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        Complex64::new(PI.ln(), 0.0) - ln_sin(PI * z) - ln_gamma_unchecked(1.0 - z)
    } else {
        let z = z - 1.0;
        let mut acc = Complex64::new(LANCZOS_COEFFS[0], 0.0);
        for (k, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
            acc += *c / (z + k as f64);
        }
        let t = z + LANCZOS_G + 0.5;
        0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + acc.ln()
    }
}

/// Logarithm of Γ(z), defined up to a multiple of 2πi.
pub fn ln_gamma(z: Complex64) -> Result<Complex64, SpecfunError> {
    check_finite(z)?;
    if nonpositive_integer(z).is_some() {
        return Err(SpecfunError::Pole { re: z.re, im: z.im });
    }
    Ok(ln_gamma_unchecked(z))
}

/// Γ(z) for complex `z`.
pub fn gamma(z: Complex64) -> Result<Complex64, SpecfunError> {
    Ok(ln_gamma(z)?.exp())
}

/// 1/Γ(z); entire, so poles of Γ map to an exact zero.
pub fn rgamma(z: Complex64) -> Result<Complex64, SpecfunError> {
    check_finite(z)?;
    if nonpositive_integer(z).is_some() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok((-ln_gamma_unchecked(z)).exp())
}

/// Value and z-derivative of a Gauss series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    pub derivative: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Region {
    Disk,
    UnitCircle,
}

fn gauss_series(
    alpha: Complex64,
    beta: Complex64,
    gamma_c: Complex64,
    z: Complex64,
    region: Region,
) -> Result<SeriesValue, SpecfunError> {
    for v in [alpha, beta, gamma_c, z] {
        check_finite(v)?;
    }
    if nonpositive_integer(gamma_c).is_some() {
        return Err(SpecfunError::ParameterPole {
            re: gamma_c.re,
            im: gamma_c.im,
        });
    }

    let degree = match (nonpositive_integer(alpha), nonpositive_integer(beta)) {
        (Some(m), Some(n)) => Some(m.min(n)),
        (Some(m), None) => Some(m),
        (None, Some(n)) => Some(n),
        (None, None) => None,
    };

    if degree.is_none() {
        match region {
            Region::Disk => {
                if z.norm() >= 1.0 - 1e-9 {
                    return Err(SpecfunError::Convergence {
                        terms: 0,
                        z_abs: z.norm(),
                    });
                }
            }
            Region::UnitCircle => {
                if z.norm() > 1.0 + 1e-12 || (gamma_c - alpha - beta).re <= 0.0 {
                    return Err(SpecfunError::Convergence {
                        terms: 0,
                        z_abs: z.norm(),
                    });
                }
            }
        }
    }

    let one = Complex64::new(1.0, 0.0);
    let mut coeff = one;
    let mut z_pow = one;
    let mut value = one;
    let mut derivative = Complex64::new(0.0, 0.0);
    let mut quiet_steps = 0;

    // terminating parameters are snapped to the exact integer
    let (alpha, beta) = match degree {
        Some(n) if nonpositive_integer(alpha) == Some(n) => {
            (Complex64::new(-(n as f64), 0.0), beta)
        }
        Some(n) => (alpha, Complex64::new(-(n as f64), 0.0)),
        None => (alpha, beta),
    };

    // on the circle the tail of an algebraically decaying series is about
    // term / (1 − z) once the coefficients vary slowly
    let tail_factor = match region {
        Region::Disk => 1.0,
        Region::UnitCircle => 1.0 + 1.0 / (one - z).norm().max(1e-300),
    };
    let limit = degree.map_or(MAX_SERIES_TERMS, |n| n as usize);
    for k in 0..limit {
        let kf = k as f64;
        let a_k = alpha + kf;
        let b_k = beta + kf;
        let ratio = a_k * b_k / ((gamma_c + kf) * (kf + 1.0));
        let previous_pow = z_pow;
        coeff *= ratio;
        z_pow *= z;
        let term = coeff * z_pow;
        let dterm = coeff * previous_pow * (kf + 1.0);
        value += term;
        derivative += dterm;

        if degree.is_none() {
            let growth = tail_factor.min(kf + 1.0);
            let small = growth * term.norm() <= SERIES_RELATIVE_TOLERANCE * value.norm()
                && growth * dterm.norm() <= SERIES_RELATIVE_TOLERANCE * derivative.norm();
            if small {
                quiet_steps += 1;
                if quiet_steps >= 2 {
                    return Ok(SeriesValue { value, derivative });
                }
            } else {
                quiet_steps = 0;
            }
        }
    }

    match degree {
        Some(_) => Ok(SeriesValue { value, derivative }),
        None => Err(SpecfunError::Convergence {
            terms: MAX_SERIES_TERMS,
            z_abs: z.norm(),
        }),
    }
}

/// Gauss hypergeometric function ₂F₁(α, β; γ; z) inside the unit disk, or
/// anywhere when the series terminates.
pub fn hyp2f1(
    alpha: Complex64,
    beta: Complex64,
    gamma_c: Complex64,
    z: Complex64,
) -> Result<Complex64, SpecfunError> {
    Ok(gauss_series(alpha, beta, gamma_c, z, Region::Disk)?.value)
}

/// d/dz ₂F₁(α, β; γ; z) = (αβ/γ) ₂F₁(α+1, β+1; γ+1; z).
pub fn hyp2f1_dz(
    alpha: Complex64,
    beta: Complex64,
    gamma_c: Complex64,
    z: Complex64,
) -> Result<Complex64, SpecfunError> {
    Ok(gauss_series(alpha, beta, gamma_c, z, Region::Disk)?.derivative)
}

/// Value and derivative in one pass, same domain as [`hyp2f1`].
pub fn hyp2f1_with_dz(
    alpha: Complex64,
    beta: Complex64,
    gamma_c: Complex64,
    z: Complex64,
) -> Result<SeriesValue, SpecfunError> {
    gauss_series(alpha, beta, gamma_c, z, Region::Disk)
}

/// Series on the closed unit disk. Requires `Re(γ − α − β) > 0` unless the
/// series terminates. Away from z = 1 the Pfaff transformation
/// ₂F₁(α, β; γ; z) = (1 − z)^{−α} ₂F₁(α, γ − β; γ; z/(z − 1)) gives a
/// geometrically convergent series; near z = 1 convergence is algebraic.
pub fn hyp2f1_unit_circle(
    alpha: Complex64,
    beta: Complex64,
    gamma_c: Complex64,
    z: Complex64,
) -> Result<SeriesValue, SpecfunError> {
    let one = Complex64::new(1.0, 0.0);
    let one_minus = one - z;
    let terminating = nonpositive_integer(alpha).is_some() || nonpositive_integer(beta).is_some();
    if !terminating
        && z.norm() <= 1.0 + 1e-12
        && (gamma_c - alpha - beta).re > 0.0
        && one_minus.norm() >= 1.25
    {
        let w = z / (z - one);
        let g = gauss_series(alpha, gamma_c - beta, gamma_c, w, Region::Disk)?;
        let pow = one_minus.powc(-alpha);
        let value = pow * g.value;
        let derivative =
            pow * (alpha * g.value / one_minus - g.derivative / (one_minus * one_minus));
        return Ok(SeriesValue { value, derivative });
    }
    gauss_series(alpha, beta, gamma_c, z, Region::UnitCircle)
}
