use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analytic::{DiscDomain, SeriesVec3};
use crate::error::{Error, Result};
use crate::metric::{inner, MetricTag, Vec3, Vec3C};
use crate::tolerance::{Tolerances, TRUNCATION_TOL};

/// Interval samples used by validation and boundary checks.
pub const VALIDATION_SAMPLES: usize = 201;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ViolationKind {
    /// `a` has an imaginary part on `I`.
    NotRealCurve,
    NotRealNormal,
    /// `<n, a'>` does not vanish.
    NotOrthogonal,
    /// `<n, n>` differs from `+1` (Euclidean) or `-1` (Lorentz).
    NotUnitNormal,
    /// `|a'|²` too small (Euclidean).
    DegenerateTangent,
    /// `<a', a'>_L` too small or negative (Lorentz).
    NotSpacelike,
}

/// A failed data check, at the worst sampled parameter.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub u: f64,
    pub magnitude: f64,
    pub tolerance: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?} at u = {:.6}: {:e} (tolerance {:e})",
            self.kind, self.u, self.magnitude, self.tolerance
        )
    }
}

/// A real-analytic curve with a unit normal field along it.
#[derive(Clone, Debug, PartialEq)]
pub struct BjorlingData {
    a: SeriesVec3,
    n: SeriesVec3,
    metric: MetricTag,
}

impl BjorlingData {
    /// Pairs the curve and normal without validating; see [`validate`](Self::validate).
    pub fn new(a: SeriesVec3, n: SeriesVec3, metric: MetricTag) -> Result<Self> {
        if a.domain() != n.domain() {
            return Err(Error::DomainMismatch);
        }
        Ok(BjorlingData { a, n, metric })
    }

    /// Pairs `a` with [`default_normal`].
    pub fn with_default_normal(a: SeriesVec3, metric: MetricTag) -> Result<Self> {
        let n = default_normal(&a, metric)?;
        BjorlingData::new(a, n, metric)
    }

    pub fn a(&self) -> &SeriesVec3 {
        &self.a
    }

    pub fn n(&self) -> &SeriesVec3 {
        &self.n
    }

    pub fn metric(&self) -> MetricTag {
        self.metric
    }

    pub fn domain(&self) -> DiscDomain {
        self.a.domain()
    }

    pub fn validate(&self) -> Vec<Violation> {
        self.validate_with(&Tolerances::default(), VALIDATION_SAMPLES)
    }

    pub fn validate_with(&self, tol: &Tolerances, samples: usize) -> Vec<Violation> {
        let mut out = Vec::new();
        let imag_a = self.a.max_imag_on_interval();
        if imag_a >= tol.reality {
            out.push(Violation {
                kind: ViolationKind::NotRealCurve,
                u: self.domain().center(),
                magnitude: imag_a,
                tolerance: tol.reality,
            });
        }
        let imag_n = self.n.max_imag_on_interval();
        if imag_n >= tol.reality {
            out.push(Violation {
                kind: ViolationKind::NotRealNormal,
                u: self.domain().center(),
                magnitude: imag_n,
                tolerance: tol.reality,
            });
        }

        let da = self.a.derivative();
        let target = self.metric.unit_normal_norm();
        let mut worst_orth = (0.0, f64::NAN);
        let mut worst_unit = (0.0, f64::NAN);
        let mut min_tangent = (f64::INFINITY, f64::NAN);
        for u in self.domain().interval_samples(samples) {
            let w = Complex64::new(u, 0.0);
            let ap = da.eval_unchecked(w).re();
            let n = self.n.eval_unchecked(w).re();
            let orth = inner(self.metric, n, ap).abs();
            if orth > worst_orth.0 || worst_orth.1.is_nan() {
                worst_orth = (orth, u);
            }
            let unit = (inner(self.metric, n, n) - target).abs();
            if unit > worst_unit.0 || worst_unit.1.is_nan() {
                worst_unit = (unit, u);
            }
            let t = inner(self.metric, ap, ap);
            if t < min_tangent.0 {
                min_tangent = (t, u);
            }
        }
        if worst_orth.0 >= tol.validation {
            out.push(Violation {
                kind: ViolationKind::NotOrthogonal,
                u: worst_orth.1,
                magnitude: worst_orth.0,
                tolerance: tol.validation,
            });
        }
        if worst_unit.0 >= tol.validation {
            out.push(Violation {
                kind: ViolationKind::NotUnitNormal,
                u: worst_unit.1,
                magnitude: worst_unit.0,
                tolerance: tol.validation,
            });
        }
        if !(min_tangent.0 > tol.tangent) {
            out.push(Violation {
                kind: match self.metric {
                    MetricTag::Euclidean => ViolationKind::DegenerateTangent,
                    MetricTag::Lorentz => ViolationKind::NotSpacelike,
                },
                u: min_tangent.1,
                magnitude: min_tangent.0,
                tolerance: tol.tangent,
            });
        }
        out
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::ValidationFailed(v))
        }
    }

    /// `n ×_metric a'`, the integrand of the conjugate curve.
    pub fn normal_integrand(&self) -> Result<SeriesVec3> {
        self.n.cross(self.metric, &self.a.derivative())
    }
}

/// A unit normal field along `a` with real coefficients.
///
/// Lorentz: `e₃ + (a₃'/<a',a'>_L) a'`, which is `⊥_L a'` and timelike
/// whenever `a'` is spacelike. Euclidean: the unit vector of `{e₃, e₁, e₂}`
/// with the least alignment to `a'` on `I`, projected off `a'`.
pub fn default_normal(a: &SeriesVec3, metric: MetricTag) -> Result<SeriesVec3> {
    let d = a.domain();
    let n = a.degree();
    let ap = a.derivative().real_part().with_degree(n);
    let q = ap.inner(metric, &ap)?;
    let inv_q = q.recip()?;
    let axis = match metric {
        MetricTag::Lorentz => 2,
        MetricTag::Euclidean => best_axis(&ap, d),
    };
    let e = basis(axis);
    let e_series = SeriesVec3::constant(d, e, n);
    // For the Lorentz metric <e₃, a'>_L = -a₃', so both cases subtract the
    // metric projection of e onto a'.
    let e_dot_ap = e_series.inner(metric, &ap)?;
    let t = e_dot_ap.mul(&inv_q)?;
    let v = e_series.sub(&ap.mul_scalar(&t)?)?;
    let nn = v.inner(metric, &v)?;
    let scale = match metric {
        MetricTag::Lorentz => nn.neg().sqrt()?.recip()?,
        MetricTag::Euclidean => nn.sqrt()?.recip()?,
    };
    let out = v.mul_scalar(&scale)?.real_part();
    out.check_truncation(TRUNCATION_TOL)?;
    Ok(out)
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn basis(i: usize) -> Vec3C {
    let mut e = [Complex64::new(0.0, 0.0); 3];
    e[i] = one();
    Vec3::from_array(e)
}

fn best_axis(ap: &SeriesVec3, d: DiscDomain) -> usize {
    let mut best = (2, f64::NEG_INFINITY);
    for axis in [2, 0, 1] {
        let worst = d
            .interval_samples(VALIDATION_SAMPLES)
            .into_iter()
            .map(|u| {
                let t = ap.eval_unchecked(Complex64::new(u, 0.0)).re();
                1.0 - t.get(axis).powi(2) / t.dot(t)
            })
            .fold(f64::INFINITY, f64::min);
        // Prefer e₃ unless it is nearly aligned somewhere.
        if worst > best.1 + 0.25 || (best.1 == f64::NEG_INFINITY) {
            best = (axis, worst);
        }
    }
    best.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::Series;

    fn real_poly(d: DiscDomain, p: &[f64], degree: usize) -> Series {
        Series::from_real_polynomial(d, p, degree)
    }

    fn d() -> DiscDomain {
        DiscDomain::new(0.0, 2.0, 1.0).unwrap()
    }

    fn circle(d: DiscDomain, n: usize) -> SeriesVec3 {
        SeriesVec3::new(
            Series::cos_affine(d, 1.0, 0.0, n),
            Series::sin_affine(d, 1.0, 0.0, n),
            Series::zero(d, n),
        )
        .unwrap()
    }

    fn constant(d: DiscDomain, v: [f64; 3]) -> SeriesVec3 {
        SeriesVec3::constant(d, Vec3::from_array(v.map(|x| Complex64::new(x, 0.0))), 48)
    }

    #[test]
    fn lorentz_circle_is_valid() {
        let data = BjorlingData::new(
            circle(d(), 48),
            constant(d(), [0.0, 0.0, 1.0]),
            MetricTag::Lorentz,
        )
        .unwrap();
        assert!(data.validate().is_empty());
    }

    #[test]
    fn non_unit_normal_flagged() {
        let data = BjorlingData::new(
            circle(d(), 48),
            constant(d(), [0.0, 0.0, 2.0]),
            MetricTag::Lorentz,
        )
        .unwrap();
        let v = data.validate();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind, ViolationKind::NotUnitNormal);
        assert!((v[0].magnitude - 3.0).abs() < 1e-12);
        assert!(matches!(
            data.ensure_valid(),
            Err(Error::ValidationFailed(_))
        ));
    }

    #[test]
    fn euclidean_line_is_valid() {
        let a = SeriesVec3::new(
            real_poly(d(), &[0.0, 1.0], 48),
            Series::zero(d(), 48),
            Series::zero(d(), 48),
        )
        .unwrap();
        let data =
            BjorlingData::new(a, constant(d(), [0.0, 1.0, 0.0]), MetricTag::Euclidean).unwrap();
        assert!(data.validate().is_empty());
    }

    #[test]
    fn constant_curve_has_degenerate_tangent() {
        let data = BjorlingData::new(
            constant(d(), [1.0, 1.0, 1.0]),
            constant(d(), [0.0, 0.0, 1.0]),
            MetricTag::Euclidean,
        )
        .unwrap();
        assert!(data
            .validate()
            .iter()
            .any(|v| v.kind == ViolationKind::DegenerateTangent));
    }

    #[test]
    fn timelike_curve_is_not_spacelike() {
        let a = SeriesVec3::new(
            Series::zero(d(), 48),
            Series::zero(d(), 48),
            real_poly(d(), &[0.0, 1.0], 48),
        )
        .unwrap();
        let data =
            BjorlingData::new(a, constant(d(), [1.0, 0.0, 0.0]), MetricTag::Lorentz).unwrap();
        assert!(data
            .validate()
            .iter()
            .any(|v| v.kind == ViolationKind::NotSpacelike));
    }

    #[test]
    fn default_normals_validate() {
        let dom = DiscDomain::new(0.0, 1.5, 1.0).unwrap();
        let helix = SeriesVec3::new(
            Series::cos_affine(dom, 1.0, 0.0, 48),
            Series::sin_affine(dom, 1.0, 0.0, 48),
            real_poly(dom, &[0.0, 0.3], 48),
        )
        .unwrap();
        for metric in [MetricTag::Euclidean, MetricTag::Lorentz] {
            let data = BjorlingData::with_default_normal(helix.clone(), metric).unwrap();
            assert!(
                data.validate().is_empty(),
                "{metric}: {:?}",
                data.validate()
            );
        }
        let vertical = SeriesVec3::new(
            Series::zero(dom, 48),
            real_poly(dom, &[0.0, 0.1, 0.2], 48),
            real_poly(dom, &[0.0, 1.0], 48),
        )
        .unwrap();
        let data = BjorlingData::with_default_normal(vertical, MetricTag::Euclidean).unwrap();
        assert!(data.validate().is_empty());
    }
}
