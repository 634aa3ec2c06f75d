//! Named real-analytic space curves with exact Taylor coefficients.

use num_complex::Complex64;

use super::{DiscDomain, Series, SeriesVec3};
use crate::metric::Vec3R;

fn xyz(x: Series, y: Series, z: Series) -> SeriesVec3 {
    SeriesVec3::new(x, y, z).expect("components share a domain")
}

/// `(r cos u, r sin u, 0)`.
pub fn circle(d: DiscDomain, r: f64, degree: usize) -> SeriesVec3 {
    helix(d, r, 0.0, degree)
}

/// `u · dir`.
pub fn line(d: DiscDomain, dir: Vec3R, degree: usize) -> SeriesVec3 {
    let t = Series::from_real_polynomial(d, &[0.0, 1.0], degree);
    xyz(
        t.scale_real(dir.x),
        t.scale_real(dir.y),
        t.scale_real(dir.z),
    )
}

/// `(r cos u, r sin u, p u)`.
pub fn helix(d: DiscDomain, r: f64, p: f64, degree: usize) -> SeriesVec3 {
    xyz(
        Series::cos_affine(d, 1.0, 0.0, degree).scale_real(r),
        Series::sin_affine(d, 1.0, 0.0, degree).scale_real(r),
        Series::from_real_polynomial(d, &[0.0, p], degree),
    )
}

/// `((r + ε) cos u, (r + ε) sin u, ε sin u)`.
pub fn perturbed_circle(d: DiscDomain, r: f64, eps: f64, degree: usize) -> SeriesVec3 {
    let cos = Series::cos_affine(d, 1.0, 0.0, degree);
    let sin = Series::sin_affine(d, 1.0, 0.0, degree);
    xyz(
        cos.scale_real(r + eps),
        sin.scale_real(r + eps),
        sin.scale_real(eps),
    )
}

/// `circle(r) + ε (sin u − sin u₀, cos u₀ − cos u, κ (sin u − sin u₀))`
/// with `u₀` the domain center: a circle sheared along its radial
/// direction and tilted by `κ`, agreeing with `circle(r)` at `u₀`. With
/// `|κ| < 1` the tangents of this curve and of `circle(r)` span a
/// spacelike plane.
pub fn tilted_circle(d: DiscDomain, r: f64, eps: f64, kappa: f64, degree: usize) -> SeriesVec3 {
    let (s0, c0) = d.center().sin_cos();
    let cos = Series::cos_affine(d, 1.0, 0.0, degree);
    let sin = Series::sin_affine(d, 1.0, 0.0, degree);
    let ds = sin.add_constant(Complex64::new(-s0, 0.0));
    let dc = cos.add_constant(Complex64::new(-c0, 0.0));
    xyz(
        cos.scale_real(r)
            .add(&ds.scale_real(eps))
            .expect("same domain"),
        sin.scale_real(r)
            .sub(&dc.scale_real(eps))
            .expect("same domain"),
        ds.scale_real(eps * kappa),
    )
}

/// `c` at every `u`.
pub fn constant(d: DiscDomain, c: Vec3R, degree: usize) -> SeriesVec3 {
    SeriesVec3::constant(d, c.to_complex(), degree)
}

/// Real polynomial components, monomials about 0.
pub fn polynomial(d: DiscDomain, x: &[f64], y: &[f64], z: &[f64], degree: usize) -> SeriesVec3 {
    xyz(
        Series::from_real_polynomial(d, x, degree),
        Series::from_real_polynomial(d, y, degree),
        Series::from_real_polynomial(d, z, degree),
    )
}

/// `sinh θ (cos u, sin u, 0) + cosh θ e₃`, a unit timelike normal along
/// `circle(r)` for every `θ`.
pub fn boosted_normal(d: DiscDomain, theta: f64, degree: usize) -> SeriesVec3 {
    let (s, c) = (theta.sinh(), theta.cosh());
    xyz(
        Series::cos_affine(d, 1.0, 0.0, degree).scale_real(s),
        Series::sin_affine(d, 1.0, 0.0, degree).scale_real(s),
        Series::constant(d, Complex64::new(c, 0.0), degree),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{inner, MetricTag};

    #[test]
    fn builtins_match_closed_forms() {
        let d = DiscDomain::new(0.0, 2.0, 1.0).unwrap();
        let p = perturbed_circle(d, 1.0, 0.05, 48);
        let t = tilted_circle(d, 1.0, 0.1, 0.5, 48);
        for u in d.interval_samples(11) {
            let v = p.eval_real(u).unwrap().re();
            assert!((v.x - 1.05 * u.cos()).abs() < 1e-14);
            assert!((v.z - 0.05 * u.sin()).abs() < 1e-14);
            let w = t.eval_real(u).unwrap().re();
            assert!((w.y - (u.sin() - 0.1 * (u.cos() - 1.0))).abs() < 1e-14);
            assert!((w.z - 0.05 * u.sin()).abs() < 1e-14);
            let n = boosted_normal(d, 0.7, 48).eval_real(u).unwrap().re();
            assert!((inner(MetricTag::Lorentz, n, n) + 1.0).abs() < 1e-13);
        }
        let l = line(d, Vec3R::new(1.0, 2.0, 0.0), 48);
        assert!((l.eval_real(0.5).unwrap().re().y - 1.0).abs() < 1e-15);
    }
}
