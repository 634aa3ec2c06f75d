use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::patch::{forms, local_geometry_with};
use super::{BjorlingData, IsotropicCurve, SurfacePatch};
use crate::error::{Error, Result};
use crate::metric::Vec3R;
use crate::tolerance::{Tolerances, MEAN_CURVATURE_MARGIN};

/// Probe step of the harmonicity stencil. The lattice spacing of a patch is
/// far too coarse for a `1e-6` threshold, so the stencil is evaluated at
/// each node with its own small step.
pub const HARMONIC_PROBE_STEP: f64 = 1e-3;
/// Step of the fourth-order stencils in the finite-difference mean curvature.
pub const FD_CURVATURE_STEP: f64 = 1e-2;

/// Numerical certificate of a sampled patch.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PatchCertificate {
    pub isotropy_residual: f64,
    /// `max(|E - G|, |F|) / max(E, G)` over nodes.
    pub conformality_max: f64,
    /// 5-point Laplacian of the positions over `max(1, max |X|)`.
    pub harmonicity_max: f64,
    /// `|H|` over nodes whose margin exceeds the curvature margin.
    pub mean_curvature_max: f64,
    /// Series versus finite-difference `H` over the same nodes.
    pub curvature_agreement_max: f64,
    pub margin_min: f64,
    pub curvature_nodes: usize,
    pub stencil_nodes: usize,
}

impl PatchCertificate {
    pub fn passes(&self, tol: &Tolerances) -> bool {
        self.checks(tol).iter().all(|c| c.3)
    }

    /// `(name, value, tolerance, pass)` for each certified quantity.
    pub fn checks(&self, tol: &Tolerances) -> Vec<(&'static str, f64, f64, bool)> {
        vec![
            (
                "isotropy_residual",
                self.isotropy_residual,
                tol.isotropy,
                self.isotropy_residual < tol.isotropy,
            ),
            (
                "conformality_max",
                self.conformality_max,
                tol.conformality,
                self.conformality_max < tol.conformality,
            ),
            (
                "harmonicity_max",
                self.harmonicity_max,
                tol.harmonicity,
                self.harmonicity_max < tol.harmonicity,
            ),
            (
                "mean_curvature_max",
                self.mean_curvature_max,
                tol.mean_curvature,
                self.mean_curvature_max < tol.mean_curvature,
            ),
            (
                "curvature_agreement_max",
                self.curvature_agreement_max,
                tol.curvature_agreement,
                self.curvature_agreement_max < tol.curvature_agreement,
            ),
        ]
    }
}

fn position(curve: &IsotropicCurve, u: f64, v: f64) -> Vec3R {
    curve.f().eval_unchecked(Complex64::new(u, v)).re()
}

fn inside(curve: &IsotropicCurve, u: f64, v: f64, reach: f64) -> bool {
    let d = curve.domain();
    (Complex64::new(u, v) - d.center()).norm() + reach <= d.radius()
}

/// 5-point Laplacian of `Re f` at `(u, v)`.
pub fn laplacian(curve: &IsotropicCurve, u: f64, v: f64, h: f64) -> Vec3R {
    let c = position(curve, u, v);
    let s = position(curve, u + h, v)
        + position(curve, u - h, v)
        + position(curve, u, v + h)
        + position(curve, u, v - h);
    (s - c.scale(4.0)).scale(1.0 / (h * h))
}

/// Mean curvature from fourth-order finite differences of the positions
/// alone, independent of the series derivatives.
pub fn fd_mean_curvature(curve: &IsotropicCurve, u: f64, v: f64, h: f64) -> Option<f64> {
    let x = |du: f64, dv: f64| position(curve, u + du * h, v + dv * h);
    let d1 = [(-2.0, 1.0), (-1.0, -8.0), (1.0, 8.0), (2.0, -1.0)];
    let first = |along_u: bool| {
        d1.iter()
            .fold(Vec3R::default(), |acc, &(k, w)| {
                let p = if along_u { x(k, 0.0) } else { x(0.0, k) };
                acc + p.scale(w)
            })
            .scale(1.0 / (12.0 * h))
    };
    let d2 = [
        (-2.0, -1.0),
        (-1.0, 16.0),
        (0.0, -30.0),
        (1.0, 16.0),
        (2.0, -1.0),
    ];
    let second = |along_u: bool| {
        d2.iter()
            .fold(Vec3R::default(), |acc, &(k, w)| {
                let p = if along_u { x(k, 0.0) } else { x(0.0, k) };
                acc + p.scale(w)
            })
            .scale(1.0 / (12.0 * h * h))
    };
    let mut x_uv = Vec3R::default();
    for &(i, wi) in &d1 {
        for &(j, wj) in &d1 {
            x_uv += x(i, j).scale(wi * wj);
        }
    }
    let x_uv = x_uv.scale(1.0 / (144.0 * h * h));
    forms(
        curve.metric(),
        first(true),
        first(false),
        second(true),
        x_uv,
        second(false),
    )
    .map(|(_, _, h)| h)
}

pub fn certify_patch(curve: &IsotropicCurve, patch: &SurfacePatch) -> PatchCertificate {
    let mut cert = PatchCertificate {
        isotropy_residual: curve.isotropy_residual(),
        conformality_max: 0.0,
        harmonicity_max: 0.0,
        mean_curvature_max: 0.0,
        curvature_agreement_max: 0.0,
        margin_min: f64::INFINITY,
        curvature_nodes: 0,
        stencil_nodes: 0,
    };
    let scale = patch
        .positions
        .iter()
        .map(|p| p.max_abs())
        .fold(1.0, f64::max);
    for j in 0..patch.nv {
        for i in 0..patch.nu {
            let k = patch.index(i, j);
            let (u, v) = patch.param(i, j);
            let (e, f, g) = (patch.e[k], patch.f[k], patch.g[k]);
            let big = e.abs().max(g.abs());
            cert.conformality_max = cert.conformality_max.max((e - g).abs().max(f.abs()) / big);
            cert.margin_min = cert.margin_min.min(patch.margin[k]);

            if inside(curve, u, v, HARMONIC_PROBE_STEP) {
                let lap = laplacian(curve, u, v, HARMONIC_PROBE_STEP).max_abs() / scale;
                cert.harmonicity_max = cert.harmonicity_max.max(lap);
            }
            if patch.margin[k] > MEAN_CURVATURE_MARGIN {
                cert.curvature_nodes += 1;
                cert.mean_curvature_max =
                    cert.mean_curvature_max.max(patch.mean_curvature[k].abs());
                if inside(
                    curve,
                    u,
                    v,
                    2.0 * FD_CURVATURE_STEP * std::f64::consts::SQRT_2,
                ) {
                    cert.stencil_nodes += 1;
                    let diff = match fd_mean_curvature(curve, u, v, FD_CURVATURE_STEP) {
                        Some(h) => (h - patch.mean_curvature[k]).abs(),
                        None => f64::INFINITY,
                    };
                    cert.curvature_agreement_max = cert.curvature_agreement_max.max(diff);
                }
            }
        }
    }
    cert
}

/// Björling conditions along `v = 0`: largest `|Re f(u, 0) − a(u)|` and
/// `|N(u, 0) − n(u)|` over `samples` points of `I`.
pub fn boundary_residuals(
    curve: &IsotropicCurve,
    data: &BjorlingData,
    samples: usize,
) -> Result<(f64, f64)> {
    if curve.domain() != data.domain() {
        return Err(Error::DomainMismatch);
    }
    let phi = curve.phi();
    let dphi = phi.derivative();
    let mut pos: f64 = 0.0;
    let mut normal: f64 = 0.0;
    for u in data.domain().interval_samples(samples) {
        let w = Complex64::new(u, 0.0);
        let g = local_geometry_with(curve, &phi, &dphi, w)?;
        pos = pos.max((g.position - data.a().eval_unchecked(w).re()).max_abs());
        normal = normal.max((g.normal - data.n().eval_unchecked(w).re()).max_abs());
    }
    Ok((pos, normal))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{DiscDomain, Series, SeriesVec3};
    use crate::bjorling::sample_patch;
    use crate::metric::MetricTag;

    // Enneper: f = (w - w³/3, i(w + w³/3), w²) up to the sign of the middle
    // component, a polynomial isotropic curve.
    fn enneper() -> IsotropicCurve {
        let d = DiscDomain::new(0.0, 1.0, 0.5).unwrap();
        let x = Series::from_real_polynomial(d, &[0.0, 1.0, 0.0, -1.0 / 3.0], 8);
        let y = Series::from_real_polynomial(d, &[0.0, 1.0, 0.0, 1.0 / 3.0], 8).mul_i();
        let z = Series::from_real_polynomial(d, &[0.0, 0.0, 1.0], 8);
        IsotropicCurve::new(SeriesVec3::new(x, y, z).unwrap(), MetricTag::Euclidean)
    }

    #[test]
    fn enneper_certifies() {
        let c = enneper();
        assert!(c.isotropy_residual() < 1e-14);
        let p = sample_patch(&c, (-0.5, 0.5), (-0.5, 0.5), 21, 21).unwrap();
        let cert = certify_patch(&c, &p);
        assert!(cert.passes(&Tolerances::default()), "{cert:?}");
        assert!(cert.stencil_nodes > 300);
    }

    #[test]
    fn non_conformal_curve_fails_and_curvatures_agree() {
        let d = DiscDomain::new(0.0, 1.0, 0.5).unwrap();
        // Re f is the saddle z = x² − y², with H ≠ 0 away from x = ±y.
        let x = Series::identity(d, 4);
        let y = x.mul_i();
        let z = Series::from_real_polynomial(d, &[0.0, 0.0, 1.0], 4);
        let c = IsotropicCurve::new(SeriesVec3::new(x, y, z).unwrap(), MetricTag::Euclidean);
        let p = sample_patch(&c, (0.2, 0.45), (-0.1, 0.1), 9, 9).unwrap();
        let cert = certify_patch(&c, &p);
        assert!(cert.conformality_max > 0.1);
        assert!(cert.mean_curvature_max > 0.05);
        assert!(cert.harmonicity_max < 1e-6);
        assert!(cert.curvature_agreement_max < 1e-4);
        assert!(!cert.passes(&Tolerances::default()));
    }
}
