use serde::{Deserialize, Serialize};

use super::patch::margin_of;
use super::IsotropicCurve;
use crate::analytic::SUP_NORM_SAMPLES;
use crate::error::{Error, Result};
use crate::tolerance::INF_SAFETY;

/// Interior lattice (per side) for margins; with the boundary circle this
/// gives at least 256 + 64² samples.
pub const MARGIN_GRID: usize = 72;
/// Fraction of the largest admissible `η` that is returned.
pub const ETA_SAFETY: f64 = 0.9;

/// Perturbation budget of Lemma "eta".
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EtaBudget {
    pub zeta: f64,
    /// `max_i sup_Ω |Φ₀ᵢ|`.
    pub s: f64,
    pub eta: f64,
    /// Largest `η` satisfying both constraints, before the safety factor.
    pub eta_max: f64,
}

impl EtaBudget {
    /// `2Sη + η² < ζ/3` and `0 < 2Sη − η² < ζ/3`.
    pub fn verify(&self) -> bool {
        let (s, e, third) = (self.s, self.eta, self.zeta / 3.0);
        self.zeta > 0.0
            && e > 0.0
            && 2.0 * s * e + e * e < third
            && 2.0 * s * e - e * e > 0.0
            && 2.0 * s * e - e * e < third
    }
}

/// Smallest margin `|Φ₁|²+|Φ₂|² ∓ |Φ₃|²` over the closed disc, times the
/// infimum safety factor when positive.
pub fn immersion_margin(curve: &IsotropicCurve, grid: usize) -> f64 {
    let d = curve.domain();
    let phi = curve.phi();
    let raw = d
        .closed_disc_samples(SUP_NORM_SAMPLES, grid)
        .into_iter()
        .map(|w| margin_of(curve.metric(), phi.eval_unchecked(w)))
        .fold(f64::INFINITY, f64::min);
    if raw > 0.0 {
        raw * INF_SAFETY
    } else {
        raw
    }
}

/// Closed-form budget from `S` and `ζ`.
pub fn eta_from_bounds(s: f64, zeta: f64) -> Result<EtaBudget> {
    if !(zeta > 0.0) {
        return Err(Error::NotImmersed { zeta });
    }
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "sup bound must be positive, got {s}"
        )));
    }
    let third = zeta / 3.0;
    // η² + 2Sη − ζ/3 < 0; the difference form keeps precision for small ζ.
    let mut eta_max = third / (s + (s * s + third).sqrt());
    // η² − 2Sη + ζ/3 > 0 below the smaller root, when the roots are real.
    if s * s >= third {
        eta_max = eta_max.min(third / (s + (s * s - third).sqrt()));
    }
    eta_max = eta_max.min(2.0 * s);
    Ok(EtaBudget {
        zeta,
        s,
        eta: ETA_SAFETY * eta_max,
        eta_max,
    })
}

/// Budget of the base surface: `ζ` from [`immersion_margin`] and `S` from
/// the sup-norms of `Φ₀ = f'`.
pub fn eta_budget(curve: &IsotropicCurve) -> Result<EtaBudget> {
    let zeta = immersion_margin(curve, MARGIN_GRID);
    if !(zeta > 0.0) {
        return Err(Error::NotImmersed { zeta });
    }
    let s = curve.phi().sup_norm_default().value;
    eta_from_bounds(s, zeta)
}
