//! Partner potentials produced by the transformations.

use std::fmt;
use std::sync::Arc;

use crate::error::Result;
use crate::solution::check_domain;

/// Number of predicted levels kept by default.
pub const DEFAULT_LEVELS: usize = 8;

/// Which construction produced a potential.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    DeleteGround,
    CreateGround,
    FirstOrderIsospectral,
    DeleteTwo,
    CreateTwo,
    CreateOne,
    MoveOne,
    DeleteOne,
    RealIsospectral,
    ComplexIsospectral,
    ConfluentIsospectral,
    ConfluentDelete,
}

impl Provenance {
    pub fn label(&self) -> &'static str {
        match self {
            Provenance::DeleteGround => "delete-ground",
            Provenance::CreateGround => "create-ground",
            Provenance::FirstOrderIsospectral => "isospectral",
            Provenance::DeleteTwo => "(i) delete two",
            Provenance::CreateTwo => "(ii) create two",
            Provenance::CreateOne => "(iii) create one",
            Provenance::MoveOne => "(iv) move one",
            Provenance::DeleteOne => "(v) delete one",
            Provenance::RealIsospectral => "(vi) isospectral",
            Provenance::ComplexIsospectral => "complex isospectral",
            Provenance::ConfluentIsospectral => "confluent isospectral",
            Provenance::ConfluentDelete => "confluent delete",
        }
    }

    pub fn order(&self) -> u8 {
        match self {
            Provenance::DeleteGround
            | Provenance::CreateGround
            | Provenance::FirstOrderIsospectral => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Coefficients c of the c·csc²x divergence at x = 0 and x = π.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EndpointCoefficients {
    pub left: f64,
    pub right: f64,
}

impl EndpointCoefficients {
    pub fn new(left: f64, right: f64) -> Self {
        Self { left, right }
    }
}

/// Power-law behavior y^p of a function at one endpoint (y = distance to it).
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Endpoint {
    Vanishing,
    Diverging,
}

impl Endpoint {
    pub(crate) fn exponent(self, a: f64) -> f64 {
        match self {
            Endpoint::Vanishing => a + 1.0,
            Endpoint::Diverging => -a,
        }
    }
}

/// Exponent of a Wronskian built from two seeds with the given behaviors.
pub(crate) fn wronskian_exponent(a: f64, first: Endpoint, second: Endpoint) -> f64 {
    let (p1, p2) = (first.exponent(a), second.exponent(a));
    if first == second {
        // W' ∝ u₁u₂ ~ y^{2p}, so W ~ y^{2p+1} unless that tends to a constant
        match first {
            Endpoint::Vanishing => 2.0 * p1 + 1.0,
            Endpoint::Diverging => (2.0 * p1 + 1.0).min(0.0),
        }
    } else {
        p1 + p2 - 1.0
    }
}

/// c·csc²x coefficient of V₀ − (ln f)'' when f ~ y^q.
pub(crate) fn shifted_coefficient(a: f64, q: f64) -> f64 {
    0.5 * a * (a + 1.0) + q
}

/// Number of unperturbed levels from which predicted spectra are built.
pub(crate) const LEVEL_POOL: usize = 24;

/// Spectral outcome of a transformation: label, predicted levels and the
/// new endpoint coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDesign {
    pub provenance: Provenance,
    /// Ascending; may be longer than what is finally reported.
    pub predicted_spectrum: Vec<f64>,
    pub coefficients: EndpointCoefficients,
}

impl SpectralDesign {
    pub(crate) fn new(
        provenance: Provenance,
        mut predicted_spectrum: Vec<f64>,
        coefficients: EndpointCoefficients,
    ) -> Self {
        predicted_spectrum.sort_by(f64::total_cmp);
        Self {
            provenance,
            predicted_spectrum,
            coefficients,
        }
    }
}

type PotentialFn = dyn Fn(f64) -> Result<f64> + Send + Sync;

/// A transformed potential with its predicted spectrum.
#[derive(Clone)]
pub struct PartnerPotential {
    eval: Arc<PotentialFn>,
    design: SpectralDesign,
    levels: usize,
    warnings: Vec<String>,
}

impl fmt::Debug for PartnerPotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PartnerPotential")
            .field("provenance", &self.design.provenance)
            .field("predicted_spectrum", &self.predicted_spectrum())
            .field("coefficients", &self.design.coefficients)
            .finish()
    }
}

impl PartnerPotential {
    pub(crate) fn new<F>(eval: F, design: SpectralDesign) -> Self
    where
        F: Fn(f64) -> Result<f64> + Send + Sync + 'static,
    {
        Self {
            eval: Arc::new(eval),
            design,
            levels: DEFAULT_LEVELS,
            warnings: Vec::new(),
        }
    }

    pub(crate) fn with_warning(mut self, warning: String) -> Self {
        self.warnings.push(warning);
        self
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        check_domain(x)?;
        (self.eval)(x)
    }

    /// The lowest predicted levels, ascending ([`DEFAULT_LEVELS`] unless
    /// changed with [`PartnerPotential::with_levels`]).
    pub fn predicted_spectrum(&self) -> &[f64] {
        let n = self.levels.min(self.design.predicted_spectrum.len());
        &self.design.predicted_spectrum[..n]
    }

    pub fn provenance(&self) -> Provenance {
        self.design.provenance
    }

    pub fn singular_coefficients(&self) -> EndpointCoefficients {
        self.design.coefficients
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn with_levels(mut self, levels: usize) -> Self {
        self.levels = levels;
        self
    }

    /// Replace the predicted spectrum, e.g. with externally supplied values.
    pub fn with_predicted_spectrum(mut self, mut spectrum: Vec<f64>) -> Self {
        spectrum.sort_by(f64::total_cmp);
        self.levels = spectrum.len();
        self.design.predicted_spectrum = spectrum;
        self
    }
}
