//! Finite-difference oracle for the symbolic geometry and soliton residuals.

mod compiled;
mod crosscheck;
pub mod fd;
mod sampling;

use thiserror::Error;

pub use compiled::Compiled;
pub use crosscheck::{
    convergence, crosscheck_geometry, crosscheck_residual, fd_metric_derivatives, ComponentResidual,
    ConvergenceReport, Execution, GeometryReport, ResidualReport, TensorDeviation, OUTER_FACTOR,
};
pub use sampling::{
    allowed, random_polynomial, random_polynomial_in, SamplePlan, DEFAULT_HALF_WIDTH, DEFAULT_STEP,
    DEFAULT_TOLERANCE,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumericError {
    #[error("expression still contains function symbol `{0}`; instantiate it first")]
    FreeFunction(String),
    #[error("parameter `{0}` has no numeric value")]
    UnboundParameter(String),
    #[error("eps must be 1 or -1 for numeric evaluation")]
    SymbolicEps,
    #[error("lambda must be a rational number for numeric evaluation")]
    SymbolicLambda,
    #[error("invalid sample plan: {0}")]
    InvalidPlan(String),
}
