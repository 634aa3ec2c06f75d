use num_complex::Complex64;
use serde::Serialize;

use super::IsotropicCurve;
use crate::error::{Error, Result};
use crate::metric::{cross, inner, MetricTag, Vec3R};
use crate::tolerance::LIGHTLIKE_TOL;

/// Differential geometry of `X = Re f` at one parameter `w = u + iv`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LocalGeometry {
    pub position: Vec3R,
    pub x_u: Vec3R,
    pub x_v: Vec3R,
    pub normal: Vec3R,
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub mean_curvature: f64,
    pub margin: f64,
}

/// `|Φ₁|² + |Φ₂|² ∓ |Φ₃|²`, which equals `2E` for a conformal immersion.
pub fn margin_of(metric: MetricTag, phi: crate::metric::Vec3C) -> f64 {
    phi.x.norm_sqr() + phi.y.norm_sqr() + metric.third_sign() * phi.z.norm_sqr()
}

/// Fundamental forms from position derivatives, shared with the
/// finite-difference cross-check.
#[allow(clippy::too_many_arguments)]
pub(crate) fn forms(
    metric: MetricTag,
    x_u: Vec3R,
    x_v: Vec3R,
    x_uu: Vec3R,
    x_uv: Vec3R,
    x_vv: Vec3R,
) -> Option<(Vec3R, [f64; 3], f64)> {
    let e = inner(metric, x_u, x_u);
    let f = inner(metric, x_u, x_v);
    let g = inner(metric, x_v, x_v);
    let raw = cross(metric, x_u, x_v);
    let nn = inner(metric, raw, raw);
    let eps = metric.unit_normal_norm();
    // The normal must have the causal character of a unit normal.
    if !(nn * eps > LIGHTLIKE_TOL) {
        return None;
    }
    let normal = raw.scale(1.0 / (nn * eps).sqrt());
    let l = inner(metric, x_uu, normal);
    let m = inner(metric, x_uv, normal);
    let n = inner(metric, x_vv, normal);
    let det = e * g - f * f;
    if !(det.abs() > 0.0) {
        return None;
    }
    let h = eps * (l * g - 2.0 * m * f + n * e) / (2.0 * det);
    Some((normal, [e, f, g], h))
}

/// Local geometry from the series derivatives of `f`.
///
/// With `Φ = f'`: `X_u = Re Φ`, `X_v = -Im Φ`, `X_uu = Re Φ'`,
/// `X_uv = -Im Φ'`, `X_vv = -Re Φ'`. The normal is `X_u × X_v`, which for
/// curves built by `solve` equals `n` along `v = 0`.
pub fn local_geometry(curve: &IsotropicCurve, w: Complex64) -> Result<LocalGeometry> {
    let phi = curve.phi();
    let dphi = phi.derivative();
    local_geometry_with(curve, &phi, &dphi, w)
}

pub(crate) fn local_geometry_with(
    curve: &IsotropicCurve,
    phi: &crate::analytic::SeriesVec3,
    dphi: &crate::analytic::SeriesVec3,
    w: Complex64,
) -> Result<LocalGeometry> {
    curve.domain().check(w)?;
    let metric = curve.metric();
    let p = phi.eval_unchecked(w);
    let dp = dphi.eval_unchecked(w);
    let x_u = p.re();
    let x_v = -p.im();
    let (normal, [e, f, g], h) = forms(metric, x_u, x_v, dp.re(), -dp.im(), -dp.re())
        .ok_or(Error::DegenerateNormal { point: w })?;
    Ok(LocalGeometry {
        position: curve.f().eval_unchecked(w).re(),
        x_u,
        x_v,
        normal,
        e,
        f,
        g,
        mean_curvature: h,
        margin: margin_of(metric, p),
    })
}

/// Surface sampled on a `nu × nv` lattice; node `(i, j)` is stored at
/// `j * nu + i` with `u` varying fastest.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurfacePatch {
    pub metric: MetricTag,
    pub nu: usize,
    pub nv: usize,
    pub u_range: (f64, f64),
    pub v_range: (f64, f64),
    pub positions: Vec<Vec3R>,
    pub normals: Vec<Vec3R>,
    pub e: Vec<f64>,
    pub f: Vec<f64>,
    pub g: Vec<f64>,
    pub mean_curvature: Vec<f64>,
    pub margin: Vec<f64>,
}

impl SurfacePatch {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nu + i
    }

    pub fn param(&self, i: usize, j: usize) -> (f64, f64) {
        (
            lerp(self.u_range, i, self.nu),
            lerp(self.v_range, j, self.nv),
        )
    }

    /// Quads as 0-based vertex indices, counter-clockwise in `(u, v)`.
    pub fn quads(&self) -> Vec<[usize; 4]> {
        let mut out = Vec::with_capacity((self.nu - 1) * (self.nv - 1));
        for j in 0..self.nv - 1 {
            for i in 0..self.nu - 1 {
                out.push([
                    self.index(i, j),
                    self.index(i + 1, j),
                    self.index(i + 1, j + 1),
                    self.index(i, j + 1),
                ]);
            }
        }
        out
    }
}

fn lerp(r: (f64, f64), i: usize, n: usize) -> f64 {
    if n == 1 {
        return r.0;
    }
    r.0 + (r.1 - r.0) * i as f64 / (n - 1) as f64
}

pub fn sample_patch(
    curve: &IsotropicCurve,
    u_range: (f64, f64),
    v_range: (f64, f64),
    nu: usize,
    nv: usize,
) -> Result<SurfacePatch> {
    if nu < 2 || nv < 2 {
        return Err(Error::InvalidArgument(format!(
            "patch grid must be at least 2x2, got {nu}x{nv}"
        )));
    }
    let phi = curve.phi();
    let dphi = phi.derivative();
    let mut patch = SurfacePatch {
        metric: curve.metric(),
        nu,
        nv,
        u_range,
        v_range,
        positions: Vec::with_capacity(nu * nv),
        normals: Vec::with_capacity(nu * nv),
        e: Vec::with_capacity(nu * nv),
        f: Vec::with_capacity(nu * nv),
        g: Vec::with_capacity(nu * nv),
        mean_curvature: Vec::with_capacity(nu * nv),
        margin: Vec::with_capacity(nu * nv),
    };
    for j in 0..nv {
        for i in 0..nu {
            let w = Complex64::new(lerp(u_range, i, nu), lerp(v_range, j, nv));
            let g = local_geometry_with(curve, &phi, &dphi, w)?;
            patch.positions.push(g.position);
            patch.normals.push(g.normal);
            patch.e.push(g.e);
            patch.f.push(g.f);
            patch.g.push(g.g);
            patch.mean_curvature.push(g.mean_curvature);
            patch.margin.push(g.margin);
        }
    }
    Ok(patch)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{DiscDomain, Series, SeriesVec3};

    // Planar Lorentz surface e^v (cos u, sin u, 0).
    fn lorentz_plane() -> IsotropicCurve {
        let d = DiscDomain::new(0.0, 1.0, 0.5).unwrap();
        let cos = Series::cos_affine(d, 1.0, 0.0, 48);
        let sin = Series::sin_affine(d, 1.0, 0.0, 48);
        let i = Complex64::i();
        // d0 = (-sin w, cos w - 1, 0); f = a + i d0.
        let f = SeriesVec3::new(
            cos.sub(&sin.scale(i)).unwrap(),
            sin.add(&cos.add_constant(Complex64::new(-1.0, 0.0)).scale(i))
                .unwrap(),
            Series::zero(d, 48),
        )
        .unwrap();
        IsotropicCurve::new(f, MetricTag::Lorentz)
    }

    #[test]
    fn planar_lorentz_margin_and_curvature() {
        let c = lorentz_plane();
        assert!(c.isotropy_residual() < 1e-12);
        let p = sample_patch(&c, (-0.4, 0.4), (-0.3, 0.3), 9, 7).unwrap();
        assert_eq!(p.len(), 63);
        for j in 0..7 {
            for i in 0..9 {
                let k = p.index(i, j);
                let (_, v) = p.param(i, j);
                assert!(p.mean_curvature[k].abs() < 1e-12);
                assert!((p.margin[k] - 2.0 * (2.0 * v).exp()).abs() < 1e-12);
                assert!((p.normals[k].z - 1.0).abs() < 1e-12);
            }
        }
        assert_eq!(p.quads().len(), 48);
    }

    #[test]
    fn rejects_points_outside_disc() {
        let c = lorentz_plane();
        assert!(matches!(
            sample_patch(&c, (-0.4, 0.4), (-1.0, 1.0), 4, 4),
            Err(Error::OutOfDomain { .. })
        ));
        assert!(sample_patch(&c, (0.0, 0.1), (0.0, 0.1), 1, 4).is_err());
    }
}
