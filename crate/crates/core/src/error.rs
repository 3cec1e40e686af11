//! Error types shared across the simulator.

use thiserror::Error;

/// Errors produced by the channel, outage and optimizer modules.
#[derive(Debug, Clone, Error)]
pub enum SimError {
    /// An argument violated a documented precondition.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// Two inputs that must agree in length did not.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    /// A quadrature routine could not reach the requested tolerance
    /// within its evaluation budget.
    #[error("quadrature did not converge: achieved {achieved:.3e}, requested {requested:.3e}")]
    Numerical { achieved: f64, requested: f64 },

    /// An API contract was violated (stale cache, stepping a finished
    /// episode, sampling an under-filled replay memory, ...).
    #[error("contract violation: {0}")]
    Contract(String),
}

pub type Result<T> = std::result::Result<T, SimError>;

impl SimError {
    pub(crate) fn parameter(msg: impl Into<String>) -> Self {
        SimError::Parameter(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        SimError::Contract(msg.into())
    }
}
