use num_complex::Complex64;

use crate::bjorling::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("vector is not timelike: <v,v>_L = {norm_sq:e}")]
    NotTimelike { norm_sq: f64 },

    #[error("point {point} lies outside the disc |w - {center}| <= {radius}")]
    OutOfDomain {
        point: Complex64,
        center: f64,
        radius: f64,
    },

    #[error("operands live on different domains")]
    DomainMismatch,

    #[error(
        "composition image leaves the domain: |gamma(w) - u0| reaches {reach} (radius {radius})"
    )]
    ImageEscapesDomain { reach: f64, radius: f64 },

    #[error("refit residual {residual:e} exceeds {tolerance:e} in {stage}")]
    RefitResidualTooLarge {
        stage: &'static str,
        residual: f64,
        tolerance: f64,
    },

    #[error("validation failed: {}", format_violations(.0))]
    ValidationFailed(Vec<Violation>),

    #[error("series truncation insufficient: tail bound {tail:e}, decay ratio {ratio:.3}")]
    TruncationInsufficient { tail: f64, ratio: f64 },

    #[error("surface normal cannot be normalized at w = {point}")]
    DegenerateNormal { point: Complex64 },

    #[error("not an immersion: margin {zeta:e} <= 0")]
    NotImmersed { zeta: f64 },

    #[error("tangents are parallel at u = {u}: |a' x l'| = {magnitude:e}")]
    ParallelTangents { u: f64, magnitude: f64 },

    #[error("isotropy residual {residual:e} exceeds {tolerance:e}")]
    IsotropyCertificateFailed { residual: f64, tolerance: f64 },

    #[error("iterate left the domain at w = {point}")]
    DomainEscape { point: Complex64 },

    #[error("Gauss-Newton stalled at u = {u} with distance {residual:e}")]
    NoDescent { u: f64, residual: f64 },

    #[error("right-hand side violates the plane constraint at u = {u}: {violation:e}")]
    NotInJn { u: f64, violation: f64 },

    #[error("tangent plane degenerates at u = {u}")]
    DegeneratePlane { u: f64 },

    #[error("Re F does not vanish on the interval: {value:e} at u = {u}")]
    ReFNotZero { u: f64, value: f64 },

    #[error("reconstruction residual {residual:e} exceeds {tolerance:e}")]
    ReconstructionFailed { residual: f64, tolerance: f64 },

    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("residual increased at iteration {iteration}: {previous:e} -> {current:e}")]
    ResidualIncreased {
        iteration: usize,
        previous: f64,
        current: f64,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotTimelike { .. } => "NotTimelike",
            Error::OutOfDomain { .. } => "OutOfDomain",
            Error::DomainMismatch => "DomainMismatch",
            Error::ImageEscapesDomain { .. } => "ImageEscapesDomain",
            Error::RefitResidualTooLarge { .. } => "RefitResidualTooLarge",
            Error::ValidationFailed(_) => "ValidationFailed",
            Error::TruncationInsufficient { .. } => "TruncationInsufficient",
            Error::DegenerateNormal { .. } => "DegenerateNormal",
            Error::NotImmersed { .. } => "NotImmersed",
            Error::ParallelTangents { .. } => "ParallelTangents",
            Error::IsotropyCertificateFailed { .. } => "IsotropyCertificateFailed",
            Error::DomainEscape { .. } => "DomainEscape",
            Error::NoDescent { .. } => "NoDescent",
            Error::NotInJn { .. } => "NotInJn",
            Error::DegeneratePlane { .. } => "DegeneratePlane",
            Error::ReFNotZero { .. } => "ReFNotZero",
            Error::ReconstructionFailed { .. } => "ReconstructionFailed",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::ResidualIncreased { .. } => "ResidualIncreased",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }

    /// Input admissibility failures, as opposed to numerical certification
    /// failures.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::NotTimelike { .. }
                | Error::ValidationFailed(_)
                | Error::ParallelTangents { .. }
                | Error::NotInJn { .. }
                | Error::DegeneratePlane { .. }
                | Error::OutOfDomain { .. }
                | Error::DomainMismatch
                | Error::InvalidArgument(_)
        )
    }
}

fn format_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
