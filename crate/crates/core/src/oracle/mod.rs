//! Independent numerical checks: finite-difference spectra, node counts,
//! ODE residuals and quadrature.

mod fd;
mod grid;
mod integrability;
mod nodes;
pub mod quadrature;
mod residual;

pub use fd::{
    discretize, fd_eigensolve, LevelMatch, SpectralComparison, SpectrumReport, Tridiagonal,
    SAFETY_FACTOR,
};
pub use grid::Grid;
pub use integrability::{
    probe_square_integrability, IntegrabilityProbe, PROBE_INSETS, PROBE_TOLERANCE,
};
pub use nodes::{count_nodes, count_nodes_with, node_positions};
pub use quadrature::quadrature;
pub use residual::{interior_points, ode_residual, DIFFERENCE_STEP};
