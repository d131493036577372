//! Error type shared across the crate.

/// Errors produced by constants, quadrature and verification routines.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// An argument violated a documented precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// The adaptive engine exhausted its budget before reaching the
    /// requested tolerance. Carries the best estimate and its error bound.
    #[error("quadrature did not converge: estimate {estimate:e}, error bound {error_bound:e}, requested {requested:e}")]
    Accuracy {
        estimate: f64,
        error_bound: f64,
        requested: f64,
    },

    /// Evaluation requested exactly at a non-removable kernel singularity.
    #[error("singular argument: {0}")]
    Singularity(String),

    /// The data violated a structural assumption (e.g. more than one sign
    /// change where the paper's threshold list guarantees a single root).
    #[error("unexpected structure: {0}")]
    Structure(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Best estimate carried by an accuracy error, if any.
    pub fn best_estimate(&self) -> Option<f64> {
        match self {
            Error::Accuracy { estimate, .. } => Some(*estimate),
            _ => None,
        }
    }
}
