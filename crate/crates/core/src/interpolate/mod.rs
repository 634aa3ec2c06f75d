//! Curve interpolation by maximal and minimal surfaces: the isotropic
//! extension of a curve pair, closeness and containment diagnostics, the
//! linearized inverse of Prop. "invertible" and a chord-Newton solve of the
//! composition equation of Theorem "IFT".

mod containment;
mod linearized;
mod newton;
mod problem;

pub use containment::{
    containment_check, containment_report, ContainmentReport, MAX_GAUSS_NEWTON_ITER,
};
pub use linearized::{LinearizedProblem, LinearizedSolution, PivotStrategy};
pub use newton::{chord_newton, NewtonOptions, NewtonState};
pub use problem::{
    closeness_report, isotropic_extension, isotropic_extension_with, pair_normal, pair_normal_with,
    ClosenessReport, InterpolationProblem, IsotropicExtension, ETA_SPLIT,
};
