//! Callable Schrödinger solutions carrying their energy and provenance.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Value and first derivative of a solution at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub value: Complex64,
    pub derivative: Complex64,
}

impl Sample {
    pub fn new(value: Complex64, derivative: Complex64) -> Self {
        Self { value, derivative }
    }

    pub fn real(value: f64, derivative: f64) -> Self {
        Self {
            value: Complex64::new(value, 0.0),
            derivative: Complex64::new(derivative, 0.0),
        }
    }
}

/// Anything that can be sampled as `(u(x), u'(x))` on (0, π).
pub trait Wavefunction: Send + Sync {
    fn sample(&self, x: f64) -> Result<Sample>;
}

impl<F> Wavefunction for F
where
    F: Fn(f64) -> Result<Sample> + Send + Sync,
{
    fn sample(&self, x: f64) -> Result<Sample> {
        self(x)
    }
}

/// How a solution was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SolutionKind {
    /// Vanishes at x = 0.
    Left,
    /// Vanishes at x = π.
    Right,
    /// ψ_L + λ ψ_R.
    General {
        lambda: f64,
    },
    BoundState {
        n: usize,
    },
    /// Image of an initial solution under an intertwining operator; `n` is
    /// the level index when the source was a bound state.
    Mapped {
        n: Option<usize>,
    },
    /// 1/u of a first-order transformation.
    Missing,
    /// u₂/W or u₁/W of a second-order transformation (index 1 or 2).
    NewState {
        index: u8,
    },
}

impl fmt::Display for SolutionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolutionKind::Left => write!(f, "L"),
            SolutionKind::Right => write!(f, "R"),
            SolutionKind::General { lambda } => write!(f, "general(lambda={lambda})"),
            SolutionKind::BoundState { n } => write!(f, "bound({n})"),
            SolutionKind::Mapped { n: Some(n) } => write!(f, "mapped({n})"),
            SolutionKind::Mapped { n: None } => write!(f, "mapped"),
            SolutionKind::Missing => write!(f, "missing"),
            SolutionKind::NewState { index } => write!(f, "new({index})"),
        }
    }
}

/// Immutable, cheaply cloneable handle to a solution of some Schrödinger
/// equation at a fixed energy.
#[derive(Clone)]
pub struct SolutionEvaluator {
    energy: Complex64,
    kind: SolutionKind,
    /// Values are made real (imaginary part dropped) before being returned.
    canonical_real: bool,
    /// Square-integrability on (0, π), when it has been decided.
    square_integrable: Option<bool>,
    normalized: bool,
    inner: Arc<dyn Wavefunction>,
}

impl fmt::Debug for SolutionEvaluator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SolutionEvaluator")
            .field("energy", &self.energy)
            .field("kind", &self.kind)
            .field("canonical_real", &self.canonical_real)
            .field("square_integrable", &self.square_integrable)
            .field("normalized", &self.normalized)
            .finish()
    }
}

impl SolutionEvaluator {
    pub fn new(energy: Complex64, kind: SolutionKind, inner: Arc<dyn Wavefunction>) -> Self {
        Self {
            energy,
            kind,
            canonical_real: false,
            square_integrable: None,
            normalized: false,
            inner,
        }
    }

    pub fn from_fn<F>(energy: Complex64, kind: SolutionKind, f: F) -> Self
    where
        F: Fn(f64) -> Result<Sample> + Send + Sync + 'static,
    {
        Self::new(energy, kind, Arc::new(f))
    }

    pub(crate) fn with_canonical_real(mut self, yes: bool) -> Self {
        self.canonical_real = yes;
        self
    }

    pub(crate) fn with_square_integrable(mut self, flag: Option<bool>) -> Self {
        self.square_integrable = flag;
        self
    }

    pub(crate) fn with_normalized(mut self, yes: bool) -> Self {
        self.normalized = yes;
        self
    }

    pub fn energy(&self) -> Complex64 {
        self.energy
    }

    /// Energy as a real number; fails for complex energies.
    pub fn real_energy(&self) -> Result<f64> {
        if self.energy.im == 0.0 {
            Ok(self.energy.re)
        } else {
            Err(Error::Precondition(format!(
                "solution energy {} is not real",
                self.energy
            )))
        }
    }

    pub fn kind(&self) -> SolutionKind {
        self.kind
    }

    pub fn is_real(&self) -> bool {
        self.canonical_real
    }

    pub fn square_integrable(&self) -> Option<bool> {
        self.square_integrable
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// `(u(x), u'(x))`; `x` must lie in the open interval (0, π).
    pub fn eval(&self, x: f64) -> Result<Sample> {
        check_domain(x)?;
        let s = self.inner.sample(x)?;
        if self.canonical_real {
            Ok(Sample::real(s.value.re, s.derivative.re))
        } else {
            Ok(s)
        }
    }

    /// Sample before canonicalization, for diagnostics.
    pub fn eval_raw(&self, x: f64) -> Result<Sample> {
        check_domain(x)?;
        self.inner.sample(x)
    }

    /// Real value and derivative; the imaginary part is discarded.
    pub fn eval_real(&self, x: f64) -> Result<(f64, f64)> {
        let s = self.eval(x)?;
        Ok((s.value.re, s.derivative.re))
    }

    pub fn value(&self, x: f64) -> Result<Complex64> {
        Ok(self.eval(x)?.value)
    }

    /// Relative size of the imaginary part dropped by canonicalization.
    pub fn imaginary_residue(&self, x: f64) -> Result<f64> {
        let s = self.eval_raw(x)?;
        let scale = s.value.norm();
        Ok(if scale > 0.0 {
            s.value.im.abs() / scale
        } else {
            0.0
        })
    }

    /// Same function scaled by a real constant.
    pub fn scaled(&self, factor: f64) -> SolutionEvaluator {
        let inner = Arc::clone(&self.inner);
        let mut out = SolutionEvaluator::from_fn(self.energy, self.kind, move |x| {
            let s = inner.sample(x)?;
            Ok(Sample::new(s.value * factor, s.derivative * factor))
        });
        out.canonical_real = self.canonical_real;
        out.square_integrable = self.square_integrable;
        out
    }
}

pub(crate) fn check_domain(x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 && x < std::f64::consts::PI {
        Ok(())
    } else {
        Err(Error::Domain(x))
    }
}
