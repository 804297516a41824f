use std::path::PathBuf;

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// The long-time limit of the decay function is not a fixed point
    /// because at least one characteristic root fails to decay.
    #[error("no decaying steady state: characteristic root {root} has non-negative real part")]
    NonDecaying { root: Complex64 },

    /// A density matrix violated positivity beyond the numerical budget,
    /// which indicates an upstream failure (|h| > 1).
    #[error("invalid qubit state: {0}")]
    InvalidState(String),

    /// Quadrature and closed-form synchronization measures disagree.
    #[error(
        "quadrature divergence at phi = {phi}: closed form {closed}, quadrature {quadrature}"
    )]
    QuadratureDivergence {
        phi: f64,
        closed: f64,
        quadrature: f64,
    },

    /// The fixed integrator step is too coarse for the fastest rate present.
    #[error("step too large: dt = {dt} exceeds stability limit {limit}")]
    StepTooLarge { dt: f64, limit: f64 },

    /// A discretized mode set is only faithful below its recurrence time.
    #[error("t_max = {t_max} exceeds the mode-discretization recurrence horizon {horizon}")]
    RecurrenceHorizonExceeded { t_max: f64, horizon: f64 },

    /// Invalid user-facing configuration (CLI flags, config file, axis specs).
    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
