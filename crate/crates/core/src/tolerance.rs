//! Named tolerances shared by the library, the CLI and the acceptance suite.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Band around zero inside which `<v,v>_L` counts as lightlike.
pub const LIGHTLIKE_TOL: f64 = 1e-12;
/// Absolute bound on `|<f', f'>|` for a certified isotropic curve.
pub const ISOTROPY_TOL: f64 = 1e-10;
/// `|E - G|` and `|F|`, relative to `max(E, G)`.
pub const CONFORMALITY_TOL: f64 = 1e-8;
/// Finite-difference Laplacian of the positions, relative to the patch scale.
pub const HARMONICITY_TOL: f64 = 1e-6;
pub const MEAN_CURVATURE_TOL: f64 = 1e-6;
/// Mean curvature is only asserted where the immersion margin exceeds this.
pub const MEAN_CURVATURE_MARGIN: f64 = 0.1;
/// Series and finite-difference mean curvature must agree to this.
pub const CURVATURE_AGREEMENT_TOL: f64 = 1e-4;
/// Tail bound of a truncated series, relative to its scale.
pub const TRUNCATION_TOL: f64 = 1e-12;
/// Decay ratios at or above this reject the truncation outright.
pub const TAIL_RATIO_MAX: f64 = 0.95;
/// Pointwise-to-series refits, relative to the sampled scale.
pub const REFIT_TOL: f64 = 1e-9;
/// Björling data checks: orthogonality and unit length of the normal.
pub const VALIDATION_TOL: f64 = 1e-9;
/// Minimum squared tangent length (Euclidean) or spacelike margin (Lorentz).
pub const TANGENT_TOL: f64 = 1e-10;
/// Imaginary part allowed on the real interval.
pub const REALITY_TOL: f64 = 1e-10;
/// Cross product magnitude below which two tangents count as parallel.
pub const PARALLEL_TOL: f64 = 1e-8;
pub const CONTAINMENT_TOL: f64 = 1e-4;
pub const NEWTON_TOL: f64 = 1e-9;
/// Plane constraint `Re s' ⊥ Δ`, relative to the size of `s'`.
pub const PLANE_CONSTRAINT_TOL: f64 = 1e-9;
/// Reconstruction residual of the linearized solve, relative to `s`.
pub const RECONSTRUCTION_TOL: f64 = 1e-9;
/// `Re f(u, 0) = a(u)` on `I`.
pub const BOUNDARY_TOL: f64 = 1e-10;
/// Surface normal along `v = 0` against the prescribed `n(u)`.
pub const BOUNDARY_NORMAL_TOL: f64 = 1e-8;

/// Safety factor applied to sampled suprema.
pub const SUP_SAFETY: f64 = 1.05;
/// Safety factor applied to sampled infima.
pub const INF_SAFETY: f64 = 0.95;

/// The tolerance table as a value, overridable by name.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    pub isotropy: f64,
    pub conformality: f64,
    pub harmonicity: f64,
    pub mean_curvature: f64,
    pub curvature_agreement: f64,
    pub truncation: f64,
    pub refit: f64,
    pub validation: f64,
    pub tangent: f64,
    pub reality: f64,
    pub parallel: f64,
    pub containment: f64,
    pub newton: f64,
    pub plane_constraint: f64,
    pub reconstruction: f64,
    pub lightlike: f64,
    pub boundary: f64,
    pub boundary_normal: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            isotropy: ISOTROPY_TOL,
            conformality: CONFORMALITY_TOL,
            harmonicity: HARMONICITY_TOL,
            mean_curvature: MEAN_CURVATURE_TOL,
            curvature_agreement: CURVATURE_AGREEMENT_TOL,
            truncation: TRUNCATION_TOL,
            refit: REFIT_TOL,
            validation: VALIDATION_TOL,
            tangent: TANGENT_TOL,
            reality: REALITY_TOL,
            parallel: PARALLEL_TOL,
            containment: CONTAINMENT_TOL,
            newton: NEWTON_TOL,
            plane_constraint: PLANE_CONSTRAINT_TOL,
            reconstruction: RECONSTRUCTION_TOL,
            lightlike: LIGHTLIKE_TOL,
            boundary: BOUNDARY_TOL,
            boundary_normal: BOUNDARY_NORMAL_TOL,
        }
    }
}

impl Tolerances {
    fn slot(&mut self, name: &str) -> Option<&mut f64> {
        Some(match name {
            "isotropy" => &mut self.isotropy,
            "conformality" => &mut self.conformality,
            "harmonicity" => &mut self.harmonicity,
            "mean_curvature" => &mut self.mean_curvature,
            "curvature_agreement" => &mut self.curvature_agreement,
            "truncation" => &mut self.truncation,
            "refit" => &mut self.refit,
            "validation" => &mut self.validation,
            "tangent" => &mut self.tangent,
            "reality" => &mut self.reality,
            "parallel" => &mut self.parallel,
            "containment" => &mut self.containment,
            "newton" => &mut self.newton,
            "plane_constraint" => &mut self.plane_constraint,
            "reconstruction" => &mut self.reconstruction,
            "lightlike" => &mut self.lightlike,
            "boundary" => &mut self.boundary,
            "boundary_normal" => &mut self.boundary_normal,
            _ => return None,
        })
    }

    /// Overrides one entry; rejects unknown names and non-positive values.
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "tolerance '{name}' must be positive, got {value}"
            )));
        }
        let slot = self
            .slot(name)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown tolerance '{name}'")))?;
        *slot = value;
        Ok(())
    }

    pub fn as_map(&self) -> BTreeMap<&'static str, f64> {
        BTreeMap::from([
            ("isotropy", self.isotropy),
            ("conformality", self.conformality),
            ("harmonicity", self.harmonicity),
            ("mean_curvature", self.mean_curvature),
            ("curvature_agreement", self.curvature_agreement),
            ("truncation", self.truncation),
            ("refit", self.refit),
            ("validation", self.validation),
            ("tangent", self.tangent),
            ("reality", self.reality),
            ("parallel", self.parallel),
            ("containment", self.containment),
            ("newton", self.newton),
            ("plane_constraint", self.plane_constraint),
            ("reconstruction", self.reconstruction),
            ("lightlike", self.lightlike),
            ("boundary", self.boundary),
            ("boundary_normal", self.boundary_normal),
        ])
    }
}
