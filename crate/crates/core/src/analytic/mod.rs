//! Truncated Taylor series about a real center, standing in for analytic maps
//! on a disc `Ω` that contains the real interval `I`.
//!
//! Evaluating a series at a complex point is its analytic continuation. The
//! coefficient-wise real part of a series is the continuation of `Re f|_I`,
//! which is how pointwise constructions on `I` become analytic maps.

pub mod curves;
mod domain;
mod json;
mod sampling;
mod series;
mod vector;

pub use domain::DiscDomain;
pub use json::{AnalyticMap, CurveSpec};
pub use sampling::{CircleFit, CircleSampler};
pub use series::{series_arith, ArithOp, Series, SupNorm, TailEstimate};
pub use vector::SeriesVec3;

/// Default truncation degree.
pub const DEFAULT_DEGREE: usize = 48;
/// Boundary samples used by sup-norms.
pub const SUP_NORM_SAMPLES: usize = 256;
/// Sampling radius of circle refits, as a fraction of the disc radius.
pub const REFIT_RADIUS_FRACTION: f64 = 0.9;
