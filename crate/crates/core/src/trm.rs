//! The trigonometric Rosen–Morse model
//! V₀(x) = ½a(a+1) csc²x − b cot x on (0, π).
//!
//! Solutions are built from Gauss hypergeometric series. ψ_L (vanishing at
//! x = 0) is evaluated near the left end from its direct series in
//! z = 1 − e^{−2ix}, |z| = 2 sin x, and continued from there by checkpointed
//! Taylor expansion of the differential equation. The two-term connection
//! form in e^{2ix} is available as an independent closed form; its first
//! term is summed after Euler's transformation so that both series converge
//! on the unit circle (Re(γ − α − β) = 2a + 1 for each). ψ_R is the mirror
//! image of ψ_L under x → π − x, b → −b.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::oracle::quadrature::quadrature;
use crate::solution::{check_domain, Sample, SolutionEvaluator, SolutionKind};
use crate::specfun::{hyp2f1_unit_circle, hyp2f1_with_dz, ln_gamma, nonpositive_integer};
use crate::taylor::TaylorPath;

/// Energies closer than this to a bound level count as that level.
pub const SPECTRAL_TOLERANCE: f64 = 1e-9;

/// The direct series is used while |z| = 2 sin x stays below this.
const SERIES_RADIUS: f64 = 0.75;
/// Bound on |z|·(|α| + |β|) inside the series window; larger parameters make
/// the terms grow before they decay and the sum cancels.
const SERIES_SPREAD: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrmParams {
    a: f64,
    b: f64,
}

impl TrmParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || a <= 0.0 {
            return Err(Error::InvalidParameter("a must be positive".into()));
        }
        if !b.is_finite() {
            return Err(Error::InvalidParameter("b must be finite".into()));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Parameters of the mirrored problem (b → −b).
    pub fn mirrored(&self) -> TrmParams {
        TrmParams {
            a: self.a,
            b: -self.b,
        }
    }

    /// Coefficient ½a(a+1) of the csc² term.
    pub fn singular_coefficient(&self) -> f64 {
        0.5 * self.a * (self.a + 1.0)
    }

    pub fn potential(&self, x: f64) -> Result<f64> {
        check_domain(x)?;
        Ok(self.v0(x))
    }

    pub(crate) fn v0(&self, x: f64) -> f64 {
        let s = x.sin();
        self.singular_coefficient() / (s * s) - self.b * x.cos() / s
    }

    pub fn bound_energy(&self, n: usize) -> f64 {
        let s = n as f64 + self.a + 1.0;
        0.5 * s * s - self.b * self.b / (2.0 * s * s)
    }

    /// The first `count` bound levels.
    pub fn spectrum(&self, count: usize) -> Vec<f64> {
        (0..count).map(|n| self.bound_energy(n)).collect()
    }

    pub fn exponents(&self, energy: Complex64) -> Result<AuxExponents> {
        if !(energy.re.is_finite() && energy.im.is_finite()) {
            return Err(Error::InvalidParameter("energy must be finite".into()));
        }
        let b = Complex64::new(self.b, 0.0);
        let inner = energy * energy + b * b;
        if inner == Complex64::new(0.0, 0.0) {
            return Err(Error::Branch);
        }
        let root = (energy + inner.sqrt()).sqrt();
        if root.norm() == 0.0 {
            return Err(Error::Branch);
        }
        Ok(AuxExponents {
            mu: 2.0 * b / root,
            nu: 1.0 - root,
        })
    }

    /// Index of the bound level within [`SPECTRAL_TOLERANCE`] of `energy`.
    pub fn level_at(&self, energy: f64) -> Option<usize> {
        let mut n = 0;
        loop {
            let e = self.bound_energy(n);
            if (e - energy).abs() <= SPECTRAL_TOLERANCE {
                return Some(n);
            }
            if e > energy || n > 100_000 {
                return None;
            }
            n += 1;
        }
    }

    /// Gap containing `energy`: `None` below E₀, `Some(j)` for (E_j, E_{j+1}).
    pub fn gap_index(&self, energy: f64) -> Result<Option<usize>> {
        if !energy.is_finite() {
            return Err(Error::InvalidParameter("energy must be finite".into()));
        }
        if let Some(level) = self.level_at(energy) {
            return Err(Error::SpectralCollision { energy, level });
        }
        let mut n = 0;
        while self.bound_energy(n) < energy {
            n += 1;
            if n > 100_000 {
                return Err(Error::InvalidParameter(format!(
                    "energy {energy} is too high"
                )));
            }
        }
        Ok(n.checked_sub(1))
    }
}

/// Auxiliary exponents (μ, ν) of the hypergeometric reduction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuxExponents {
    pub mu: Complex64,
    pub nu: Complex64,
}

pub fn potential(p: &TrmParams, x: f64) -> Result<f64> {
    p.potential(x)
}

pub fn bound_energy(p: &TrmParams, n: usize) -> f64 {
    p.bound_energy(n)
}

pub fn exponents(p: &TrmParams, energy: Complex64) -> Result<AuxExponents> {
    p.exponents(energy)
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// One term C·e^{rate·x}·₂F₁(params; e^{2ix}) of a connection form.
#[derive(Debug, Clone, Copy)]
struct CircleTerm {
    ln_coeff: Complex64,
    rate: Complex64,
    params: [Complex64; 3],
}

impl CircleTerm {
    fn eval(&self, x: f64, z: Complex64) -> Result<(Complex64, Complex64)> {
        let [alpha, beta, gamma_c] = self.params;
        let f = hyp2f1_unit_circle(alpha, beta, gamma_c, z)?;
        let coeff = (self.ln_coeff + self.rate * x).exp();
        let value = coeff * f.value;
        let derivative = coeff * (self.rate * f.value + c(0.0, 2.0) * z * f.derivative);
        Ok((value, derivative))
    }
}

/// Closed-form hypergeometric representation of the solution vanishing at
/// x = 0, for one (a, b, E).
#[derive(Debug, Clone)]
pub struct LeftClosedForm {
    a: f64,
    exponents: AuxExponents,
    series_rate: Complex64,
    series_params: [Complex64; 3],
    first: CircleTerm,
    second: Option<CircleTerm>,
    path: Option<Arc<TaylorPath>>,
}

/// ln of the connection coefficients (κ_L, ρ_L); ρ_L is `None` where it
/// vanishes (bound-state energies).
fn left_coefficients(
    a: f64,
    mu: Complex64,
    nu: Complex64,
) -> Result<(Complex64, Option<Complex64>)> {
    let half_imu = c(0.0, 0.5) * mu;
    let ln_kappa = ln_gamma(c(2.0 * a + 2.0, 0.0))? + ln_gamma(1.0 - nu - half_imu)?
        - ln_gamma(a + 1.0 - half_imu)?
        - ln_gamma(a + 2.0 - nu)?;
    let ln_rho = if nonpositive_integer(a + nu).is_some() {
        None
    } else {
        let ln_i_half = c(-(2.0_f64.ln()), 0.5 * PI);
        Some(
            (2.0 * a + 1.0) * ln_i_half
                + ln_gamma(c(2.0 * a + 2.0, 0.0))?
                + ln_gamma(nu - 1.0 + half_imu)?
                - ln_gamma(a + 1.0 + half_imu)?
                - ln_gamma(a + nu)?,
        )
    };
    Ok((ln_kappa, ln_rho))
}

impl LeftClosedForm {
    pub fn new(p: &TrmParams, energy: Complex64) -> Result<Self> {
        let a = p.a;
        let ex = p.exponents(energy)?;
        let (mu, nu) = (ex.mu, ex.nu);
        let half_imu = c(0.0, 0.5) * mu;
        let i = Complex64::i();

        let series_params = [nu + a, a + 1.0 - half_imu, c(2.0 * a + 2.0, 0.0)];
        let terminating = nonpositive_integer(series_params[0]).is_some();

        let (ln_kappa, ln_rho) = left_coefficients(a, mu, nu)?;
        for g in [nu + half_imu, 2.0 - nu - half_imu] {
            if nonpositive_integer(g).is_some() {
                return Err(
                    crate::error::SpecfunError::ParameterPole { re: g.re, im: g.im }.into(),
                );
            }
        }
        // Euler: ₂F₁(ν+a, a+1+iμ/2; ν+iμ/2; z) = (1−z)^{−2a−1} ₂F₁(iμ/2−a, ν−a−1; ν+iμ/2; z)
        // with 1 − e^{2ix} = 2 sin x · e^{i(x − π/2)}.
        let p_exp = 2.0 * a + 1.0;
        let first = CircleTerm {
            ln_coeff: ln_kappa - p_exp * 2.0_f64.ln() + i * (p_exp * PI / 2.0),
            rate: -0.5 * mu + i * (nu + a) - i * p_exp,
            params: [half_imu - a, nu - a - 1.0, nu + half_imu],
        };
        let second = ln_rho.map(|ln_rho| CircleTerm {
            ln_coeff: ln_rho,
            rate: 0.5 * mu + i * (1.0 - nu - a),
            params: [1.0 - nu - a, -a - half_imu, 2.0 - nu - half_imu],
        });
        let mut form = Self {
            a,
            exponents: ex,
            series_rate: -(0.5 * mu + i * (nu + a)),
            series_params,
            first,
            second,
            path: None,
        };
        if !terminating {
            let spread = series_params[0].norm() + series_params[1].norm();
            let x0 = (0.5 * SERIES_RADIUS.min(SERIES_SPREAD / spread)).asin();
            let start = form.eval_series(x0)?;
            form.path = Some(Arc::new(TaylorPath::new(a, p.b, energy, x0, start)?));
        }
        Ok(form)
    }

    pub fn exponents(&self) -> AuxExponents {
        self.exponents
    }

    /// Direct series e^{−[μ/2 + i(ν+a)]x} sin^{a+1}x ₂F₁(ν+a, a+1−iμ/2; 2a+2; 1 − e^{−2ix}).
    pub fn eval_series(&self, x: f64) -> Result<Sample> {
        let [alpha, beta, gamma_c] = self.series_params;
        let e = Complex64::from_polar(1.0, -2.0 * x);
        let z = 1.0 - e;
        let dz = c(0.0, 2.0) * e;
        let f = hyp2f1_with_dz(alpha, beta, gamma_c, z)?;
        let s = x.sin();
        let pref = (self.series_rate * x).exp() * s.powf(self.a + 1.0);
        let log_slope = self.series_rate + (self.a + 1.0) * x.cos() / s;
        Ok(Sample::new(
            pref * f.value,
            pref * (log_slope * f.value + f.derivative * dz),
        ))
    }

    /// Two-term connection form in e^{2ix}.
    pub fn eval_connection(&self, x: f64) -> Result<Sample> {
        let z = Complex64::from_polar(1.0, 2.0 * x);
        let (mut v, mut d) = self.first.eval(x, z)?;
        if let Some(second) = &self.second {
            let (v2, d2) = second.eval(x, z)?;
            v += v2;
            d += d2;
        }
        let s = x.sin();
        let pref = s.powf(-self.a);
        let cot = x.cos() / s;
        Ok(Sample::new(pref * v, pref * (d - self.a * cot * v)))
    }

    pub fn uses_series(&self, x: f64) -> bool {
        match &self.path {
            None => true,
            Some(path) => x < path.start(),
        }
    }

    pub fn eval(&self, x: f64) -> Result<Sample> {
        match &self.path {
            Some(path) if x >= path.start() => path.eval(x),
            _ => self.eval_series(x),
        }
    }
}

/// Connection form of ψ_R written in the same basis as ψ_L, with
/// coefficients κ_R, ρ_R. Used to cross-check the mirrored evaluation.
#[derive(Debug, Clone)]
pub struct RightConnectionForm {
    inner: LeftClosedForm,
}

impl RightConnectionForm {
    pub fn new(p: &TrmParams, energy: Complex64) -> Result<Self> {
        let mut inner = LeftClosedForm::new(p, energy)?;
        let a = p.a;
        let AuxExponents { mu, nu } = inner.exponents;
        let half_imu = c(0.0, 0.5) * mu;
        let i = Complex64::i();
        let sin_pi = |w: Complex64| (PI * w).sin();

        // Γ(w)Γ(1−w) = π / sin(πw) collapses every Γ pair in κ_R and ρ_R
        let denom = sin_pi(nu - half_imu);
        let kappa_bracket = (0.5 * mu * PI).exp() * sin_pi(a + 1.0 + half_imu)
            + (-i * nu * PI).exp() * sin_pi(a + nu);
        let rho_bracket = (-0.5 * mu * PI).exp() * sin_pi(a + 1.0 - half_imu)
            + (i * nu * PI).exp() * sin_pi(a + 2.0 - nu);

        let (ln_kappa, ln_rho) = left_coefficients(a, mu, nu)?;
        let kappa_r = (ln_kappa).exp() * kappa_bracket / denom;
        let rho_l = ln_rho.map_or(c(0.0, 0.0), |l| l.exp());
        let rho_r = -rho_l * rho_bracket / denom;
        if kappa_r.norm() == 0.0 || !kappa_r.is_finite() || !rho_r.is_finite() {
            return Err(Error::Numerical(
                "degenerate right connection coefficients".into(),
            ));
        }

        let p_exp = 2.0 * a + 1.0;
        inner.first.ln_coeff = kappa_r.ln() - p_exp * 2.0_f64.ln() + i * (p_exp * PI / 2.0);
        inner.second = Some(CircleTerm {
            ln_coeff: if rho_r.norm() == 0.0 {
                c(f64::NEG_INFINITY, 0.0)
            } else {
                rho_r.ln()
            },
            rate: 0.5 * mu + i * (1.0 - nu - a),
            params: [1.0 - nu - a, -a - half_imu, 2.0 - nu - half_imu],
        });
        Ok(Self { inner })
    }

    pub fn eval(&self, x: f64) -> Result<Sample> {
        self.inner.eval_connection(x)
    }
}

fn is_real(energy: Complex64) -> bool {
    energy.im == 0.0
}

/// Solution vanishing at x = 0.
pub fn psi_l(p: &TrmParams, energy: Complex64) -> Result<SolutionEvaluator> {
    let form = Arc::new(LeftClosedForm::new(p, energy)?);
    Ok(
        SolutionEvaluator::from_fn(energy, SolutionKind::Left, move |x| form.eval(x))
            .with_canonical_real(is_real(energy)),
    )
}

/// Solution vanishing at x = π: ψ_R(x; b) = ψ_L(π − x; −b).
pub fn psi_r(p: &TrmParams, energy: Complex64) -> Result<SolutionEvaluator> {
    let form = Arc::new(LeftClosedForm::new(&p.mirrored(), energy)?);
    Ok(
        SolutionEvaluator::from_fn(energy, SolutionKind::Right, move |x| {
            let s = form.eval(PI - x)?;
            Ok(Sample::new(s.value, -s.derivative))
        })
        .with_canonical_real(is_real(energy)),
    )
}

/// ψ(x; E, λ) = ψ_L(x) + λ ψ_R(x) for real E.
pub fn general_solution(p: &TrmParams, energy: f64, lambda: f64) -> Result<SolutionEvaluator> {
    if !lambda.is_finite() {
        return Err(Error::InvalidParameter("lambda must be finite".into()));
    }
    let e = c(energy, 0.0);
    let left = psi_l(p, e)?;
    let right = psi_r(p, e)?;
    Ok(
        SolutionEvaluator::from_fn(e, SolutionKind::General { lambda }, move |x| {
            let l = left.eval_raw(x)?;
            let r = right.eval_raw(x)?;
            Ok(Sample::new(
                l.value + lambda * r.value,
                l.derivative + lambda * r.derivative,
            ))
        })
        .with_canonical_real(true),
    )
}

/// Normalized bound state ψ_n, positive next to x = 0.
pub fn bound_state(p: &TrmParams, n: usize) -> Result<SolutionEvaluator> {
    let a = p.a;
    let s = n as f64 + a + 1.0;
    let rate = c(-p.b / s, n as f64);
    let params = [
        c(-(n as f64), 0.0),
        c(a + 1.0, -p.b / s),
        c(2.0 * a + 2.0, 0.0),
    ];
    let raw = move |x: f64| -> Result<Sample> {
        let e = Complex64::from_polar(1.0, -2.0 * x);
        let z = 1.0 - e;
        let f = hyp2f1_with_dz(params[0], params[1], params[2], z)?;
        let sx = x.sin();
        let pref = (rate * x).exp() * sx.powf(a + 1.0);
        let slope = rate + (a + 1.0) * x.cos() / sx;
        Ok(Sample::new(
            pref * f.value,
            pref * (slope * f.value + f.derivative * c(0.0, 2.0) * e),
        ))
    };
    let norm2 = quadrature(|x| Ok(raw(x)?.value.norm_sqr()), 0.0, PI)?;
    if !(norm2 > 0.0 && norm2.is_finite()) {
        return Err(Error::Numerical(format!("bound state {n} has zero norm")));
    }
    let scale = 1.0 / norm2.sqrt();
    let energy = c(p.bound_energy(n), 0.0);
    Ok(
        SolutionEvaluator::from_fn(energy, SolutionKind::BoundState { n }, move |x| {
            let s = raw(x)?;
            Ok(Sample::new(s.value * scale, s.derivative * scale))
        })
        .with_canonical_real(true)
        .with_square_integrable(Some(true))
        .with_normalized(true),
    )
}

/// Interior node count of ψ_L + λψ_R at a real energy outside the spectrum.
pub fn predicted_node_count(p: &TrmParams, energy: f64, lambda: f64) -> Result<usize> {
    let count = match p.gap_index(energy)? {
        None => usize::from(lambda < 0.0),
        Some(j) if j % 2 == 0 => {
            if lambda > 0.0 {
                j + 2
            } else {
                j + 1
            }
        }
        Some(j) => {
            if lambda >= 0.0 {
                j + 1
            } else {
                j + 2
            }
        }
    };
    Ok(count)
}
