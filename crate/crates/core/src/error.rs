use thiserror::Error;

/// Failures of the special-function layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecfunError {
    #[error("gamma pole at {re}{im:+}i")]
    Pole { re: f64, im: f64 },
    #[error("hypergeometric parameter gamma = {re}{im:+}i is a non-positive integer")]
    ParameterPole { re: f64, im: f64 },
    #[error("hypergeometric series did not converge after {terms} terms (|z| = {z_abs})")]
    Convergence { terms: usize, z_abs: f64 },
    #[error("non-finite argument")]
    NonFinite,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("x = {0} lies outside the open interval (0, pi)")]
    Domain(f64),
    #[error("square-root branch degenerates: E + sqrt(E^2 + b^2) = 0")]
    Branch,
    #[error("energy {energy} coincides with bound level E_{level}")]
    SpectralCollision { energy: f64, level: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("singular transformation: {0}")]
    SingularTransform(String),
    #[error("invalid seed combination: {0}")]
    InvalidSeedCombination(String),
    #[error("degenerate energy: eigenvalue {0} equals a factorization energy")]
    DegenerateEnergy(f64),
    #[error("quadrature failed to converge after {0} evaluations")]
    QuadratureConvergence(usize),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error(transparent)]
    Specfun(#[from] SpecfunError),
}

pub type Result<T> = std::result::Result<T, Error>;
