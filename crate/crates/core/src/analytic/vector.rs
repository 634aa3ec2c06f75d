use num_complex::Complex64;

use super::series::{check_tail, image_point, tail_estimate};
use super::{CircleSampler, DiscDomain, Series, SupNorm, TailEstimate, SUP_NORM_SAMPLES};
use crate::error::{Error, Result};
use crate::metric::{MetricTag, Vec3, Vec3C};
use crate::tolerance::{REFIT_TOL, SUP_SAFETY};

/// Three series on a common domain and degree.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesVec3 {
    c: [Series; 3],
}

impl SeriesVec3 {
    /// Pads the components to a common degree.
    pub fn new(x: Series, y: Series, z: Series) -> Result<Self> {
        x.same_domain(&y)?;
        x.same_domain(&z)?;
        let n = x.degree().max(y.degree()).max(z.degree());
        Ok(SeriesVec3 {
            c: [x.with_degree(n), y.with_degree(n), z.with_degree(n)],
        })
    }

    pub fn from_components(c: [Series; 3]) -> Result<Self> {
        let [x, y, z] = c;
        SeriesVec3::new(x, y, z)
    }

    pub fn constant(domain: DiscDomain, v: Vec3C, degree: usize) -> Self {
        SeriesVec3 {
            c: v.to_array().map(|x| Series::constant(domain, x, degree)),
        }
    }

    pub fn zero(domain: DiscDomain, degree: usize) -> Self {
        SeriesVec3::constant(domain, Vec3C::default(), degree)
    }

    /// Fits a vector-valued function sampled on the refit circle.
    pub fn fit_on_circle(
        domain: DiscDomain,
        degree: usize,
        stage: &'static str,
        tol: f64,
        mut f: impl FnMut(Complex64) -> Result<Vec3C>,
    ) -> Result<SeriesVec3> {
        let sampler = CircleSampler::new(domain, degree);
        let fit = sampler.fit_components::<3>(stage, tol, |w| Ok(f(w)?.to_array()))?;
        Ok(SeriesVec3 {
            c: fit.value.map(|coeffs| Series::from_raw(domain, coeffs)),
        })
    }

    pub fn domain(&self) -> DiscDomain {
        self.c[0].domain()
    }

    pub fn center(&self) -> f64 {
        self.c[0].center()
    }

    pub fn degree(&self) -> usize {
        self.c[0].degree()
    }

    pub fn components(&self) -> &[Series; 3] {
        &self.c
    }

    pub fn component(&self, i: usize) -> &Series {
        &self.c[i]
    }

    pub fn into_components(self) -> [Series; 3] {
        self.c
    }

    fn map(&self, f: impl Fn(&Series) -> Series) -> SeriesVec3 {
        SeriesVec3 {
            c: [f(&self.c[0]), f(&self.c[1]), f(&self.c[2])],
        }
    }

    fn zip(
        &self,
        o: &SeriesVec3,
        f: impl Fn(&Series, &Series) -> Result<Series>,
    ) -> Result<SeriesVec3> {
        SeriesVec3::new(
            f(&self.c[0], &o.c[0])?,
            f(&self.c[1], &o.c[1])?,
            f(&self.c[2], &o.c[2])?,
        )
    }

    pub fn eval(&self, w: Complex64) -> Result<Vec3C> {
        self.domain().check(w)?;
        Ok(self.eval_unchecked(w))
    }

    pub fn eval_real(&self, u: f64) -> Result<Vec3C> {
        self.eval(Complex64::new(u, 0.0))
    }

    pub fn eval_unchecked(&self, w: Complex64) -> Vec3C {
        Vec3::new(
            self.c[0].eval_unchecked(w),
            self.c[1].eval_unchecked(w),
            self.c[2].eval_unchecked(w),
        )
    }

    pub fn derivative(&self) -> SeriesVec3 {
        self.map(Series::derivative)
    }

    pub fn antiderivative(&self) -> SeriesVec3 {
        self.map(Series::antiderivative)
    }

    pub fn with_degree(&self, degree: usize) -> SeriesVec3 {
        self.map(|s| s.with_degree(degree))
    }

    pub fn add(&self, o: &SeriesVec3) -> Result<SeriesVec3> {
        self.zip(o, Series::add)
    }

    pub fn sub(&self, o: &SeriesVec3) -> Result<SeriesVec3> {
        self.zip(o, Series::sub)
    }

    pub fn scale(&self, s: Complex64) -> SeriesVec3 {
        self.map(|x| x.scale(s))
    }

    pub fn scale_real(&self, s: f64) -> SeriesVec3 {
        self.map(|x| x.scale_real(s))
    }

    pub fn mul_i(&self) -> SeriesVec3 {
        self.map(Series::mul_i)
    }

    pub fn neg(&self) -> SeriesVec3 {
        self.map(Series::neg)
    }

    /// Componentwise product with a scalar series.
    pub fn mul_scalar(&self, s: &Series) -> Result<SeriesVec3> {
        SeriesVec3::new(self.c[0].mul(s)?, self.c[1].mul(s)?, self.c[2].mul(s)?)
    }

    pub fn real_part(&self) -> SeriesVec3 {
        self.map(Series::real_part)
    }

    pub fn imag_part(&self) -> SeriesVec3 {
        self.map(Series::imag_part)
    }

    pub fn inner(&self, metric: MetricTag, o: &SeriesVec3) -> Result<Series> {
        let xx = self.c[0].mul(&o.c[0])?;
        let yy = self.c[1].mul(&o.c[1])?;
        let zz = self.c[2].mul(&o.c[2])?;
        let s = xx.add(&yy)?;
        match metric {
            MetricTag::Euclidean => s.add(&zz),
            MetricTag::Lorentz => s.sub(&zz),
        }
    }

    pub fn cross(&self, metric: MetricTag, o: &SeriesVec3) -> Result<SeriesVec3> {
        let [x1, y1, z1] = &self.c;
        let [x2, y2, z2] = &o.c;
        let cx = y1.mul(z2)?.sub(&z1.mul(y2)?)?;
        let cy = z1.mul(x2)?.sub(&x1.mul(z2)?)?;
        let cz = x1.mul(y2)?.sub(&y1.mul(x2)?)?;
        let cz = match metric {
            MetricTag::Euclidean => cz,
            MetricTag::Lorentz => cz.neg(),
        };
        SeriesVec3::new(cx, cy, cz)
    }

    /// Largest component sup-norm (Notation 1).
    pub fn sup_norm(&self, samples: usize) -> SupNorm {
        let parts = self.c.iter().map(|s| s.sup_norm(samples));
        let raw = parts.clone().map(|p| p.raw).fold(0.0, f64::max);
        SupNorm {
            value: raw * SUP_SAFETY,
            raw,
            sample_count: samples.max(64),
        }
    }

    pub fn sup_norm_default(&self) -> SupNorm {
        self.sup_norm(SUP_NORM_SAMPLES)
    }

    pub fn is_real_on_interval(&self, tol: f64) -> bool {
        self.c.iter().all(|s| s.is_real_on_interval(tol))
    }

    pub fn max_imag_on_interval(&self) -> f64 {
        self.c
            .iter()
            .map(|s| s.coefficient_imag_bound().max(s.sampled_imag_max()))
            .fold(0.0, f64::max)
    }

    pub fn tail_estimate(&self) -> TailEstimate {
        let coeffs: Vec<Vec<Complex64>> = self.c.iter().map(|s| s.coeffs().to_vec()).collect();
        tail_estimate(self.domain().radius(), &coeffs)
    }

    pub fn check_truncation(&self, tol: f64) -> Result<TailEstimate> {
        check_tail(self.tail_estimate(), tol)
    }

    /// `min_u <Re c'(u), Re c'(u)>_L` over `samples` points of `I`.
    pub fn spacelike_margin(&self, samples: usize) -> f64 {
        let d = self.derivative();
        self.domain()
            .interval_samples(samples)
            .into_iter()
            .map(|u| {
                let v = d.eval_unchecked(Complex64::new(u, 0.0)).re();
                crate::metric::inner(MetricTag::Lorentz, v, v)
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Real parts of the values at `n` interval samples.
    pub fn sample_interval(&self, n: usize) -> Vec<(f64, Vec3C)> {
        self.domain()
            .interval_samples(n)
            .into_iter()
            .map(|u| (u, self.eval_unchecked(Complex64::new(u, 0.0))))
            .collect()
    }

    pub fn compose_near_identity(&self, gamma: &Series) -> Result<SeriesVec3> {
        self.compose_near_identity_with(gamma, REFIT_TOL)
    }

    pub fn compose_near_identity_with(&self, gamma: &Series, tol: f64) -> Result<SeriesVec3> {
        self.c[0].same_domain(gamma)?;
        let degree = self.degree().max(gamma.degree());
        let domain = self.domain();
        let sampler = CircleSampler::new(domain, degree);
        let fit = sampler.fit_components::<3>("compose", tol, |w| {
            let g = image_point(gamma, w)?;
            Ok(self.eval_unchecked(g).to_array())
        })?;
        Ok(SeriesVec3 {
            c: fit.value.map(|coeffs| Series::from_raw(domain, coeffs)),
        })
    }

    /// Largest difference between two maps over a sample set.
    pub fn max_distance(&self, o: &SeriesVec3, points: &[Complex64]) -> Result<f64> {
        if self.domain() != o.domain() {
            return Err(Error::DomainMismatch);
        }
        Ok(points
            .iter()
            .map(|&w| (self.eval_unchecked(w) - o.eval_unchecked(w)).max_abs())
            .fold(0.0, f64::max))
    }
}
