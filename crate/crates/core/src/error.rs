use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input violated a documented precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("eigensolver did not converge for eigenvalue {index} after {iterations} sweeps")]
    NoConvergence { index: usize, iterations: usize },

    #[error("continued-fraction fit degenerates at node {node}")]
    FitDegenerate { node: usize },

    #[error("rational fit has a pole at x = {x}")]
    Pole { x: f64 },

    #[error("abscissa {x} outside the fit range [{lo}, {hi}]")]
    OutOfRange { x: f64, lo: f64, hi: f64 },

    #[error("energy {energy} is outside the continuum ({lo}, {hi})")]
    Domain { energy: f64, lo: f64, hi: f64 },

    #[error("energy {energy} coincides with eigenvalue {index}")]
    SpectralPole { energy: f64, index: usize },

    #[error("degenerate quantity: {0}")]
    Degenerate(String),

    #[error("invalid model parameters: {0}")]
    ModelParameter(String),

    #[error("phase {arg} outside [0, pi]")]
    Branch { arg: f64 },

    #[error("knots do not interleave: {0}")]
    Interleave(String),

    #[error("sign convention violated: {0}")]
    Convention(String),

    #[error("density is not positive at energy {energy}")]
    Density { energy: f64 },

    #[error("zeta inverse is ambiguous near energy {energy}; use a finer grid")]
    Resolution { energy: f64 },

    #[error("numeric range exceeded: {0}")]
    Range(String),

    #[error("{method} is not available for {model}")]
    Unsupported {
        method: &'static str,
        model: &'static str,
    },

    #[error("quadrature failed to reach tolerance: {0}")]
    Quadrature(String),
}
