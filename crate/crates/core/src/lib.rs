//! Supersymmetric partners of the trigonometric Rosen–Morse potential.

pub mod error;
pub mod exec;
pub mod oracle;
pub mod potential;
pub mod seed;
pub mod solution;
pub mod specfun;
pub mod susy1;
pub mod susy2;
mod taylor;
pub mod trm;
pub mod verify;

pub use error::{Error, Result, SpecfunError};
pub use exec::Execution;
pub use potential::{
    EndpointCoefficients, PartnerPotential, Provenance, SpectralDesign, DEFAULT_LEVELS,
};
pub use seed::{SeedSpec, Side};
pub use solution::{Sample, SolutionEvaluator, SolutionKind, Wavefunction};
pub use trm::{
    bound_energy, bound_state, exponents, general_solution, potential, predicted_node_count, psi_l,
    psi_r, AuxExponents, TrmParams,
};
pub use verify::{verify, ResidualEntry, TransformSpec, Transformation, VerificationReport};
