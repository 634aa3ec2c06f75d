//! Björling's formula in both signatures, sampling and certification of the
//! resulting surfaces, and the perturbation budget of Lemma "eta".

mod certify;
mod data;
mod eta;
mod patch;
pub mod presets;
mod solve;

pub use certify::{
    boundary_residuals, certify_patch, fd_mean_curvature, laplacian, PatchCertificate,
    FD_CURVATURE_STEP, HARMONIC_PROBE_STEP,
};
pub use data::{default_normal, BjorlingData, Violation, ViolationKind, VALIDATION_SAMPLES};
pub use eta::{eta_budget, eta_from_bounds, immersion_margin, EtaBudget, ETA_SAFETY, MARGIN_GRID};
pub use patch::{local_geometry, margin_of, sample_patch, LocalGeometry, SurfacePatch};
pub use presets::{Preset, PresetSurface};
pub use solve::{
    conjugate_curve, isotropy_residual, residual_sample_points, solve, solve_certified,
    IsotropicCurve, RESIDUAL_GRID,
};
