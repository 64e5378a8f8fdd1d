//! Walker metric, Levi-Civita connection, curvature, Ricci tensor and Lie
//! derivative of the metric, all computed symbolically.

mod curvature;
mod lie;
mod metric;
mod tensor;

pub use curvature::{christoffel, ricci, riemann, scalar_curvature, Connection, CurvatureTensor, Geometry};
pub use lie::{lie_derivative_metric, VectorField};
pub use metric::{walker_metric, Eps, Metric};
pub use tensor::{pair_index, pair_label, SymTensor2, PAIRS};
