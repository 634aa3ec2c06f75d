use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::sampling::horner;
use super::{CircleSampler, DiscDomain, SUP_NORM_SAMPLES};
use crate::error::{Error, Result};
use crate::tolerance::{REFIT_TOL, SUP_SAFETY, TAIL_RATIO_MAX};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Scaled coefficient magnitudes below this fraction of the largest are
/// treated as rounding noise by the tail estimate. Circle refits amplify
/// rounding by `(R/ρ)^k`, which stays under this for the default degree.
const TAIL_NOISE_FLOOR: f64 = 1e-13;
const TAIL_WINDOW: usize = 8;

/// Truncated Taylor series `Σ c_k (w - u₀)^k` on a disc domain.
#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    domain: DiscDomain,
    coeffs: Vec<Complex64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupNorm {
    /// Sampled maximum times the safety factor.
    pub value: f64,
    /// Sampled maximum.
    pub raw: f64,
    pub sample_count: usize,
}

/// Geometric fit to the last coefficients, scaled by `R^k`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailEstimate {
    pub ratio: f64,
    /// Estimated sup over the closed disc of the discarded tail.
    pub bound: f64,
    /// Largest scaled coefficient, a proxy for the sup of the series.
    pub scale: f64,
}

impl TailEstimate {
    pub fn relative(&self) -> f64 {
        if self.scale > 0.0 {
            self.bound / self.scale
        } else {
            0.0
        }
    }

    pub fn acceptable(&self, tol: f64) -> bool {
        self.ratio < TAIL_RATIO_MAX && self.relative() <= tol
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    /// Scales `f`; `g` only has to share the domain.
    Scale(Complex64),
}

pub fn series_arith(op: ArithOp, f: &Series, g: &Series) -> Result<Series> {
    match op {
        ArithOp::Add => f.add(g),
        ArithOp::Sub => f.sub(g),
        ArithOp::Mul => f.mul(g),
        ArithOp::Scale(c) => {
            f.same_domain(g)?;
            Ok(f.scale(c))
        }
    }
}

/// `x^k / k!` for `k = 0..=n`, built incrementally.
fn taylor_powers(x: Complex64, n: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut t = ONE;
    for k in 0..=n {
        out.push(t);
        t = t * x / (k + 1) as f64;
    }
    out
}

impl Series {
    pub fn new(domain: DiscDomain, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "series needs at least one coefficient".into(),
            ));
        }
        if let Some(k) = coeffs
            .iter()
            .position(|c| !(c.re.is_finite() && c.im.is_finite()))
        {
            return Err(Error::InvalidArgument(format!(
                "coefficient {k} is not finite"
            )));
        }
        Ok(Series { domain, coeffs })
    }

    pub(crate) fn from_raw(domain: DiscDomain, coeffs: Vec<Complex64>) -> Self {
        debug_assert!(!coeffs.is_empty());
        Series { domain, coeffs }
    }

    pub fn zero(domain: DiscDomain, degree: usize) -> Self {
        Series::from_raw(domain, vec![ZERO; degree + 1])
    }

    pub fn constant(domain: DiscDomain, c: Complex64, degree: usize) -> Self {
        let mut s = Series::zero(domain, degree);
        s.coeffs[0] = c;
        s
    }

    /// The map `w ↦ w`, coefficients `[u₀, 1, 0, …]`.
    pub fn identity(domain: DiscDomain, degree: usize) -> Self {
        let mut s = Series::constant(domain, Complex64::new(domain.center(), 0.0), degree.max(1));
        s.coeffs[1] = ONE;
        s
    }

    /// `exp(k w + b)`.
    pub fn exp_affine(domain: DiscDomain, k: Complex64, b: Complex64, degree: usize) -> Self {
        let base = (k * domain.center() + b).exp();
        let coeffs = taylor_powers(k, degree)
            .into_iter()
            .map(|p| base * p)
            .collect();
        Series::from_raw(domain, coeffs)
    }

    /// `cos(ω w + φ)` with real `ω`, `φ`; real coefficients.
    pub fn cos_affine(domain: DiscDomain, omega: f64, phi: f64, degree: usize) -> Self {
        Self::trig_affine(domain, omega, phi, degree, 0)
    }

    /// `sin(ω w + φ)` with real `ω`, `φ`.
    pub fn sin_affine(domain: DiscDomain, omega: f64, phi: f64, degree: usize) -> Self {
        Self::trig_affine(domain, omega, phi, degree, 3)
    }

    // k-th derivative of cos is cos(x + kπ/2); sin is cos shifted by 3 quarter turns.
    fn trig_affine(domain: DiscDomain, omega: f64, phi: f64, degree: usize, shift: usize) -> Self {
        let theta = omega * domain.center() + phi;
        let (s, c) = theta.sin_cos();
        let cycle = [c, -s, -c, s];
        let coeffs = taylor_powers(Complex64::new(omega, 0.0), degree)
            .into_iter()
            .enumerate()
            .map(|(k, p)| p * cycle[(k + shift) % 4])
            .collect();
        Series::from_raw(domain, coeffs)
    }

    /// Re-expands `Σ p_j w^j` (monomials about 0) about the domain center.
    pub fn from_polynomial(domain: DiscDomain, poly: &[Complex64], degree: usize) -> Self {
        let n = degree.max(poly.len().saturating_sub(1));
        let u0 = domain.center();
        let mut coeffs = vec![ZERO; n + 1];
        // Repeated synthetic division gives the Taylor shift.
        let mut work: Vec<Complex64> = poly.to_vec();
        for c in coeffs.iter_mut().take(poly.len()) {
            let mut acc = ZERO;
            for x in work.iter_mut().rev() {
                acc = acc * u0 + *x;
                *x = acc;
            }
            *c = work[0];
            work.remove(0);
        }
        Series::from_raw(domain, coeffs)
    }

    pub fn from_real_polynomial(domain: DiscDomain, poly: &[f64], degree: usize) -> Self {
        let p: Vec<Complex64> = poly.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Series::from_polynomial(domain, &p, degree)
    }

    /// Fits a function sampled on the refit circle.
    pub fn fit_on_circle(
        domain: DiscDomain,
        degree: usize,
        stage: &'static str,
        tol: f64,
        mut f: impl FnMut(Complex64) -> Result<Complex64>,
    ) -> Result<Series> {
        let sampler = CircleSampler::new(domain, degree);
        let fit = sampler.fit_components::<1>(stage, tol, |w| Ok([f(w)?]))?;
        let [coeffs] = fit.value;
        Ok(Series::from_raw(domain, coeffs))
    }

    pub fn domain(&self) -> DiscDomain {
        self.domain
    }

    pub fn center(&self) -> f64 {
        self.domain.center()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub(crate) fn same_domain(&self, other: &Series) -> Result<()> {
        if self.domain == other.domain {
            Ok(())
        } else {
            Err(Error::DomainMismatch)
        }
    }

    pub fn eval(&self, w: Complex64) -> Result<Complex64> {
        self.domain.check(w)?;
        Ok(self.eval_unchecked(w))
    }

    pub fn eval_real(&self, u: f64) -> Result<Complex64> {
        self.eval(Complex64::new(u, 0.0))
    }

    /// Horner evaluation without the domain check; callers guarantee `w ∈ Ω̄`.
    pub fn eval_unchecked(&self, w: Complex64) -> Complex64 {
        horner(&self.coeffs, w - self.domain.center())
    }

    pub fn derivative(&self) -> Series {
        if self.coeffs.len() == 1 {
            return Series::zero(self.domain, 0);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * k as f64)
            .collect();
        Series::from_raw(self.domain, coeffs)
    }

    /// Antiderivative vanishing at `u₀`; degree grows by one.
    pub fn antiderivative(&self) -> Series {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(ZERO);
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| c / (k + 1) as f64),
        );
        Series::from_raw(self.domain, coeffs)
    }

    /// Drops or zero-pads coefficients to the given degree.
    pub fn with_degree(&self, degree: usize) -> Series {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(degree + 1, ZERO);
        Series::from_raw(self.domain, coeffs)
    }

    fn zip_with(
        &self,
        other: &Series,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<Series> {
        self.same_domain(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| f(self.coeff(k), other.coeff(k))).collect();
        Ok(Series::from_raw(self.domain, coeffs))
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Cauchy product truncated to the larger degree.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.same_domain(other)?;
        let n = self.degree().max(other.degree());
        let mut coeffs = vec![ZERO; n + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == ZERO {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                coeffs[i + j] += a * b;
            }
        }
        Ok(Series::from_raw(self.domain, coeffs))
    }

    pub fn scale(&self, c: Complex64) -> Series {
        Series::from_raw(self.domain, self.coeffs.iter().map(|&x| x * c).collect())
    }

    pub fn scale_real(&self, c: f64) -> Series {
        self.scale(Complex64::new(c, 0.0))
    }

    pub fn neg(&self) -> Series {
        self.scale_real(-1.0)
    }

    pub fn mul_i(&self) -> Series {
        self.scale(Complex64::i())
    }

    pub fn add_constant(&self, c: Complex64) -> Series {
        let mut s = self.clone();
        s.coeffs[0] += c;
        s
    }

    /// `1/f` by the power-series recurrence; requires `f(u₀) ≠ 0`. The
    /// result is only meaningful if `f` has no zero on the closed disc,
    /// which the caller certifies through the tail estimate.
    pub fn recip(&self) -> Result<Series> {
        let a0 = self.coeffs[0];
        if a0.norm() == 0.0 {
            return Err(Error::InvalidArgument(
                "reciprocal of a series vanishing at the center".into(),
            ));
        }
        let n = self.degree();
        let mut b = vec![ZERO; n + 1];
        b[0] = ONE / a0;
        for k in 1..=n {
            let mut acc = ZERO;
            for j in 1..=k {
                acc += self.coeffs[j] * b[k - j];
            }
            b[k] = -acc / a0;
        }
        Ok(Series::from_raw(self.domain, b))
    }

    /// Principal square root, with the same caveat as [`Series::recip`].
    pub fn sqrt(&self) -> Result<Series> {
        let a0 = self.coeffs[0];
        if a0.norm() == 0.0 {
            return Err(Error::InvalidArgument(
                "square root of a series vanishing at the center".into(),
            ));
        }
        let n = self.degree();
        let mut b = vec![ZERO; n + 1];
        b[0] = a0.sqrt();
        for k in 1..=n {
            let mut acc = self.coeffs[k];
            for j in 1..k {
                acc -= b[j] * b[k - j];
            }
            b[k] = acc / (b[0] * 2.0);
        }
        Ok(Series::from_raw(self.domain, b))
    }

    /// Coefficient-wise real part: the analytic continuation of `Re f|_I`.
    pub fn real_part(&self) -> Series {
        Series::from_raw(
            self.domain,
            self.coeffs
                .iter()
                .map(|c| Complex64::new(c.re, 0.0))
                .collect(),
        )
    }

    /// Coefficient-wise imaginary part: the continuation of `Im f|_I`.
    pub fn imag_part(&self) -> Series {
        Series::from_raw(
            self.domain,
            self.coeffs
                .iter()
                .map(|c| Complex64::new(c.im, 0.0))
                .collect(),
        )
    }

    pub fn sup_norm(&self, samples: usize) -> SupNorm {
        let m = samples.max(64);
        let raw = self
            .domain
            .circle_points(m, self.domain.radius(), 0.0)
            .into_iter()
            .map(|w| self.eval_unchecked(w).norm())
            .fold(0.0, f64::max);
        SupNorm {
            value: raw * SUP_SAFETY,
            raw,
            sample_count: m,
        }
    }

    pub fn sup_norm_default(&self) -> SupNorm {
        self.sup_norm(SUP_NORM_SAMPLES)
    }

    /// `max |f(u)|` over `n` equispaced points of `I`.
    pub fn max_abs_on_interval(&self, n: usize) -> f64 {
        self.domain
            .interval_samples(n)
            .into_iter()
            .map(|u| self.eval_unchecked(Complex64::new(u, 0.0)).norm())
            .fold(0.0, f64::max)
    }

    /// Largest `|Im c_k| r^k`: a bound on `|Im f|` over `I`.
    pub fn coefficient_imag_bound(&self) -> f64 {
        let r = self.domain.half_width();
        let mut rk = 1.0;
        let mut total: f64 = 0.0;
        for c in &self.coeffs {
            total += c.im.abs() * rk;
            rk *= r;
        }
        total
    }

    /// Max of `|Im f(u)|` over interval samples.
    pub fn sampled_imag_max(&self) -> f64 {
        let n = 4 * (self.degree() + 1) + 1;
        self.domain
            .interval_samples(n)
            .into_iter()
            .map(|u| self.eval_unchecked(Complex64::new(u, 0.0)).im.abs())
            .fold(0.0, f64::max)
    }

    /// Both the coefficient and the sampled test must pass.
    pub fn is_real_on_interval(&self, tol: f64) -> bool {
        self.coefficient_imag_bound() < tol && self.sampled_imag_max() < tol
    }

    pub fn tail_estimate(&self) -> TailEstimate {
        tail_estimate(self.domain.radius(), std::slice::from_ref(&self.coeffs))
    }

    pub fn check_truncation(&self, tol: f64) -> Result<TailEstimate> {
        check_tail(self.tail_estimate(), tol)
    }

    /// Series of `f ∘ γ`, fitted from samples on the refit circle.
    pub fn compose_near_identity(&self, gamma: &Series) -> Result<Series> {
        self.compose_near_identity_with(gamma, REFIT_TOL)
    }

    pub fn compose_near_identity_with(&self, gamma: &Series, tol: f64) -> Result<Series> {
        self.same_domain(gamma)?;
        let degree = self.degree().max(gamma.degree());
        let sampler = CircleSampler::new(self.domain, degree);
        let fit = sampler.fit_components::<1>("compose", tol, |w| {
            let g = image_point(gamma, w)?;
            Ok([self.eval_unchecked(g)])
        })?;
        let [coeffs] = fit.value;
        Ok(Series::from_raw(self.domain, coeffs))
    }
}

/// `γ(w)`, rejected when it leaves the open disc.
pub(crate) fn image_point(gamma: &Series, w: Complex64) -> Result<Complex64> {
    let g = gamma.eval_unchecked(w);
    let reach = (g - gamma.center()).norm();
    let radius = gamma.domain.radius();
    if !(reach < radius) {
        return Err(Error::ImageEscapesDomain { reach, radius });
    }
    Ok(g)
}

pub(crate) fn check_tail(t: TailEstimate, tol: f64) -> Result<TailEstimate> {
    if t.acceptable(tol) {
        Ok(t)
    } else {
        Err(Error::TruncationInsufficient {
            tail: t.relative(),
            ratio: t.ratio,
        })
    }
}

/// Tail estimate over one or more coefficient vectors of equal degree, using
/// per-index maxima across components.
pub(crate) fn tail_estimate(radius: f64, components: &[Vec<Complex64>]) -> TailEstimate {
    let n = components.iter().map(|c| c.len()).max().unwrap_or(1) - 1;
    let mut mags = vec![0.0f64; n + 1];
    let mut rk = 1.0;
    for (k, m) in mags.iter_mut().enumerate() {
        *m = components
            .iter()
            .map(|c| c.get(k).map_or(0.0, |x| x.norm()))
            .fold(0.0, f64::max)
            * rk;
        rk *= radius;
    }
    let scale = mags.iter().copied().fold(0.0, f64::max);
    if scale == 0.0 || !scale.is_finite() {
        return TailEstimate {
            ratio: if scale == 0.0 { 0.0 } else { f64::INFINITY },
            bound: if scale == 0.0 { 0.0 } else { f64::INFINITY },
            scale,
        };
    }
    let floor = TAIL_NOISE_FLOOR * scale;
    let start = (n + 1).saturating_sub(TAIL_WINDOW);
    let pts: Vec<(f64, f64)> = (start..=n)
        .filter(|&k| mags[k] > floor)
        .map(|k| (k as f64, mags[k].ln()))
        .collect();
    match pts.len() {
        // Fewer than two coefficients above the floor: the tail is noise.
        0 | 1 => TailEstimate {
            ratio: 0.0,
            bound: 0.0,
            scale,
        },
        _ => {
            let len = pts.len() as f64;
            let mx = pts.iter().map(|p| p.0).sum::<f64>() / len;
            let my = pts.iter().map(|p| p.1).sum::<f64>() / len;
            let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
            let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
            let slope = sxy / sxx;
            let at_n = my + slope * (n as f64 - mx);
            // Never report a fitted last term below the largest actual one in
            // the window; the fit can undershoot for zig-zag sequences.
            let last_seen = pts
                .iter()
                .map(|p| p.1 + slope * (n as f64 - p.0))
                .fold(f64::MIN, f64::max);
            finish(slope.exp(), at_n.max(last_seen).exp(), scale)
        }
    }
}

fn finish(q: f64, m_n: f64, scale: f64) -> TailEstimate {
    let bound = if q < 1.0 {
        m_n * q / (1.0 - q)
    } else {
        f64::INFINITY
    };
    TailEstimate {
        ratio: q,
        bound,
        scale,
    }
}
