//! Minimal surfaces in Euclidean 3-space and maximal surfaces in
//! Lorentz–Minkowski 3-space, built from real-analytic Björling data.
//!
//! The crate is layered bottom-up:
//!
//! * [`metric`]: vector algebra for the Euclidean and Lorentzian metrics over
//!   real and complexified 3-vectors.
//! * [`analytic`]: truncated power series on a disc, the computational stand-in
//!   for analytic maps; evaluation off the real axis is analytic continuation.
//! * [`bjorling`]: the Björling solution in both signatures, surface sampling
//!   and certification, and the perturbation budget that keeps a surface an
//!   immersion.
//! * [`interpolate`]: isotropic extensions of curve pairs, closeness and
//!   containment diagnostics, the inversion of the linearized composition
//!   operator and a chord-Newton solve of `(a + i d) ∘ γ = C`.

pub mod analytic;
pub mod bjorling;
pub mod error;
pub mod interpolate;
pub mod metric;
pub mod tolerance;

pub use analytic::{AnalyticMap, DiscDomain, Series, SeriesVec3, SupNorm, TailEstimate};
pub use bjorling::{
    BjorlingData, EtaBudget, IsotropicCurve, PatchCertificate, SurfacePatch, Violation,
    ViolationKind,
};
pub use error::{Error, Result};
pub use interpolate::{
    ClosenessReport, ContainmentReport, InterpolationProblem, IsotropicExtension,
    LinearizedProblem, LinearizedSolution, NewtonOptions, NewtonState, PivotStrategy,
};
pub use metric::{CausalCharacter, MetricTag, Vec3, Vec3C, Vec3R};
pub use tolerance::Tolerances;

pub use num_complex::Complex64;
