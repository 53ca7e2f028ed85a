//! One-stop construction and oracle verification of a transformation.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::oracle::{
    count_nodes_with, fd_eigensolve, interior_points, ode_residual, Grid, SpectralComparison,
    SpectrumReport,
};
use crate::potential::{PartnerPotential, Provenance};
use crate::seed::{SeedSpec, Side};
use crate::solution::{SolutionEvaluator, SolutionKind};
use crate::susy1::{first_order_potential, map_eigenfunction_1, missing_state};
use crate::susy2::{complex_case_potential, confluent_potential, RealTransform};
use crate::trm::{self, TrmParams};

/// Points at which residuals are sampled.
pub const RESIDUAL_POINTS: usize = 50;
/// Interior window of the residual sample.
pub const RESIDUAL_INSET: f64 = 0.1;

/// Endpoint coefficients below this leave both local solutions
/// square-integrable (limit circle).
pub const LIMIT_CIRCLE_COEFFICIENT: f64 = 0.375;
/// Inset used instead of the grid's own when an endpoint is limit circle;
/// eigenfunctions then vanish only like y and a wall at δ shifts levels by
/// about ½ψ'(0)²δ.
pub const LIMIT_CIRCLE_DELTA: f64 = 1e-10;

/// What to build from the TRM potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TransformSpec {
    FirstOrder { seed: SeedSpec },
    Real { seed1: SeedSpec, seed2: SeedSpec },
    Complex { epsilon: Complex64, side: Side },
    Confluent { j: usize, w0: f64 },
}

impl fmt::Display for TransformSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransformSpec::FirstOrder { seed } => write!(f, "first order with {seed}"),
            TransformSpec::Real { seed1, seed2 } => write!(f, "real case with {seed1}, {seed2}"),
            TransformSpec::Complex { epsilon, side } => {
                write!(f, "complex case at {epsilon} ({side})")
            }
            TransformSpec::Confluent { j, w0 } => write!(f, "confluent case j = {j}, w0 = {w0}"),
        }
    }
}

#[derive(Debug, Clone)]
enum Parts {
    First {
        seed: SolutionEvaluator,
        epsilon: f64,
    },
    Real(Box<RealTransform>),
    Other,
}

/// A constructed partner potential together with whatever is needed to map
/// eigenfunctions into it.
#[derive(Debug, Clone)]
pub struct Transformation {
    params: TrmParams,
    spec: TransformSpec,
    potential: PartnerPotential,
    parts: Parts,
}

impl TransformSpec {
    pub fn build(&self, p: &TrmParams) -> Result<Transformation> {
        let (potential, parts) = match *self {
            TransformSpec::FirstOrder { seed } => {
                let epsilon = seed.real_energy(p)?;
                let u = seed.build(p)?;
                let v = first_order_potential(p, &u, epsilon)?;
                (v, Parts::First { seed: u, epsilon })
            }
            TransformSpec::Real { seed1, seed2 } => {
                let t = RealTransform::new(p, &seed1, &seed2)?;
                (t.potential().clone(), Parts::Real(Box::new(t)))
            }
            TransformSpec::Complex { epsilon, side } => {
                (complex_case_potential(p, epsilon, side)?, Parts::Other)
            }
            TransformSpec::Confluent { j, w0 } => (confluent_potential(p, j, w0)?, Parts::Other),
        };
        Ok(Transformation {
            params: *p,
            spec: *self,
            potential,
            parts,
        })
    }
}

impl Transformation {
    pub fn params(&self) -> &TrmParams {
        &self.params
    }

    pub fn spec(&self) -> TransformSpec {
        self.spec
    }

    pub fn potential(&self) -> &PartnerPotential {
        &self.potential
    }

    pub fn provenance(&self) -> Provenance {
        self.potential.provenance()
    }

    /// Keep `levels` predicted levels.
    pub fn with_levels(mut self, levels: usize) -> Self {
        self.potential = self.potential.with_levels(levels);
        self
    }

    pub fn with_predicted_spectrum(mut self, spectrum: Vec<f64>) -> Self {
        self.potential = self.potential.with_predicted_spectrum(spectrum);
        self
    }

    /// Seed solutions of the initial potential.
    pub fn seeds(&self) -> Vec<SolutionEvaluator> {
        match &self.parts {
            Parts::First { seed, .. } => vec![seed.clone()],
            Parts::Real(t) => {
                let (u1, u2) = t.seeds();
                vec![u1.clone(), u2.clone()]
            }
            Parts::Other => Vec::new(),
        }
    }

    /// Image of the initial bound state ψ_n (first-order and real cases).
    pub fn mapped_state(&self, n: usize) -> Result<SolutionEvaluator> {
        match &self.parts {
            Parts::First { seed, epsilon } => {
                let psi = trm::bound_state(&self.params, n)?;
                map_eigenfunction_1(seed, *epsilon, &psi, self.params.bound_energy(n))
            }
            Parts::Real(t) => t.map_eigenfunction(n),
            Parts::Other => Err(Error::Precondition(format!(
                "mapped eigenfunctions are available for first-order and real second-order transformations, not the {}",
                self.spec
            ))),
        }
    }

    /// The missing state (first order) or the two states u₂/W, u₁/W.
    pub fn new_states(&self) -> Result<Vec<SolutionEvaluator>> {
        match &self.parts {
            Parts::First { seed, .. } => Ok(vec![missing_state(seed)?]),
            Parts::Real(t) => {
                let (a, b) = t.new_states()?;
                Ok(vec![a, b])
            }
            Parts::Other => Err(Error::Precondition(format!(
                "no formal eigenfunctions are kept for the {}",
                self.spec
            ))),
        }
    }

    /// Bound-state indices of the initial potential that survive the
    /// transformation.
    pub fn surviving_levels(&self, count: usize) -> Vec<usize> {
        let (first, second) = match self.spec {
            TransformSpec::FirstOrder { seed } => (seed, None),
            TransformSpec::Real { seed1, seed2 } => (seed1, Some(seed2)),
            _ => return (0..count).collect(),
        };
        let removed = |n: usize| {
            [Some(first), second]
                .into_iter()
                .flatten()
                .any(|s| s == SeedSpec::Bound { n })
        };
        (0..count).filter(|&n| !removed(n)).collect()
    }
}

/// ODE residual of one solution against the potential it should solve.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualEntry {
    pub label: String,
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub provenance: Provenance,
    pub predicted: Vec<f64>,
    pub spectrum: SpectrumReport,
    pub comparison: SpectralComparison,
    /// (label, interior node count) of mapped states.
    pub node_counts: Vec<(String, usize)>,
    pub residuals: Vec<ResidualEntry>,
    pub warnings: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.comparison.passed()
    }
}

/// `grid`, with its inset reduced to [`LIMIT_CIRCLE_DELTA`] when either
/// endpoint of `v` is limit circle.
pub fn oracle_grid(v: &PartnerPotential, grid: &Grid) -> Result<Grid> {
    let c = v.singular_coefficients();
    if c.left.min(c.right) < LIMIT_CIRCLE_COEFFICIENT {
        Grid::new(grid.n_points(), grid.delta().min(LIMIT_CIRCLE_DELTA))
    } else {
        Ok(*grid)
    }
}

/// Solve the partner potential with the oracle and compare with its
/// predicted spectrum; residuals and node counts are reported alongside.
pub fn verify(t: &Transformation, grid: &Grid, mode: Execution) -> Result<VerificationReport> {
    let v = t.potential();
    let predicted = v.predicted_spectrum().to_vec();
    let grid = oracle_grid(v, grid)?;
    let spectrum = fd_eigensolve(|x| v.eval(x), &grid, predicted.len() + 1, mode)?;
    let comparison = spectrum.compare(&predicted);

    let points = interior_points(
        RESIDUAL_INSET,
        std::f64::consts::PI - RESIDUAL_INSET,
        RESIDUAL_POINTS,
    );
    let p = *t.params();
    let mut residuals = Vec::new();
    for seed in t.seeds() {
        let r = ode_residual(&seed, seed.energy(), |x| p.potential(x), &points)?;
        residuals.push(ResidualEntry {
            label: format!("seed {}", seed.kind()),
            residual: r,
        });
    }
    let mut node_counts = Vec::new();
    let mut states: Vec<SolutionEvaluator> = Vec::new();
    if !t.seeds().is_empty() {
        for n in t.surviving_levels(3) {
            states.push(t.mapped_state(n)?);
        }
        states.extend(t.new_states()?);
    }
    for s in &states {
        let r = ode_residual(s, s.energy(), |x| v.eval(x), &points)?;
        residuals.push(ResidualEntry {
            label: s.kind().to_string(),
            residual: r,
        });
        if matches!(s.kind(), SolutionKind::Mapped { .. }) {
            node_counts.push((s.kind().to_string(), count_nodes_with(s, &grid, mode)?));
        }
    }
    Ok(VerificationReport {
        provenance: t.provenance(),
        predicted,
        spectrum,
        comparison,
        node_counts,
        residuals,
        warnings: v.warnings().to_vec(),
    })
}
