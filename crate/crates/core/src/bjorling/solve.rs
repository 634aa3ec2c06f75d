use num_complex::Complex64;

use super::BjorlingData;
use crate::analytic::{DiscDomain, SeriesVec3};
use crate::error::{Error, Result};
use crate::metric::{inner, MetricTag};
use crate::tolerance::{ISOTROPY_TOL, TRUNCATION_TOL};

/// Lattice size (per side) of the interior samples used by residual checks.
pub const RESIDUAL_GRID: usize = 24;
const RESIDUAL_BOUNDARY: usize = 256;

/// Holomorphic `f: Ω → ℂ³` with `<f', f'> = 0`; `Re f` is the surface.
#[derive(Clone, Debug, PartialEq)]
pub struct IsotropicCurve {
    f: SeriesVec3,
    metric: MetricTag,
    isotropy_residual: f64,
}

impl IsotropicCurve {
    /// Wraps `f` and measures its isotropy residual; does not certify.
    pub fn new(f: SeriesVec3, metric: MetricTag) -> Self {
        let isotropy_residual = isotropy_residual(&f, metric, RESIDUAL_GRID);
        IsotropicCurve {
            f,
            metric,
            isotropy_residual,
        }
    }

    /// Like [`new`](Self::new) but fails when the residual reaches `tol`.
    pub fn certified(f: SeriesVec3, metric: MetricTag, tol: f64) -> Result<Self> {
        let c = IsotropicCurve::new(f, metric);
        if c.isotropy_residual < tol {
            Ok(c)
        } else {
            Err(Error::IsotropyCertificateFailed {
                residual: c.isotropy_residual,
                tolerance: tol,
            })
        }
    }

    pub fn f(&self) -> &SeriesVec3 {
        &self.f
    }

    pub fn into_f(self) -> SeriesVec3 {
        self.f
    }

    pub fn metric(&self) -> MetricTag {
        self.metric
    }

    pub fn domain(&self) -> DiscDomain {
        self.f.domain()
    }

    pub fn isotropy_residual(&self) -> f64 {
        self.isotropy_residual
    }

    pub fn is_certified(&self, tol: f64) -> bool {
        self.isotropy_residual < tol
    }

    /// Weierstrass data `Φ = f'`.
    pub fn phi(&self) -> SeriesVec3 {
        self.f.derivative()
    }
}

/// Sample set for residuals: `I`, the boundary circle and an interior lattice.
pub(crate) fn residual_points(d: DiscDomain, grid: usize) -> Vec<Complex64> {
    let mut pts: Vec<Complex64> = d
        .interval_samples(super::VALIDATION_SAMPLES)
        .into_iter()
        .map(|u| Complex64::new(u, 0.0))
        .collect();
    pts.extend(d.closed_disc_samples(RESIDUAL_BOUNDARY, grid));
    pts
}

/// The default residual sample set of a domain.
pub fn residual_sample_points(d: DiscDomain) -> Vec<Complex64> {
    residual_points(d, RESIDUAL_GRID)
}

/// `sup |<f'(w), f'(w)>|` over `I` and a `grid × grid` lattice of `Ω̄`.
pub fn isotropy_residual(f: &SeriesVec3, metric: MetricTag, grid: usize) -> f64 {
    let phi = f.derivative();
    residual_points(f.domain(), grid)
        .into_iter()
        .map(|w| {
            let p = phi.eval_unchecked(w);
            inner(metric, p, p).norm()
        })
        .fold(0.0, f64::max)
}

/// `d(w) = ∫_{u₀}^w n ×_metric a'`, so that `f = a + iσd`.
pub fn conjugate_curve(data: &BjorlingData) -> Result<SeriesVec3> {
    data.ensure_valid()?;
    Ok(data.normal_integrand()?.antiderivative())
}

/// Björling's formula: `f = a + i d` (Lorentz) or `f = a − i d` (Euclidean).
pub fn solve(data: &BjorlingData) -> Result<IsotropicCurve> {
    let d = conjugate_curve(data)?;
    data.a().check_truncation(TRUNCATION_TOL)?;
    data.n().check_truncation(TRUNCATION_TOL)?;
    let sigma = data.metric().isotropic_sign();
    let f = data.a().add(&d.scale(Complex64::new(0.0, sigma)))?;
    f.check_truncation(TRUNCATION_TOL)?;
    Ok(IsotropicCurve::new(f, data.metric()))
}

/// Same as [`solve`], failing unless the isotropy residual is below
/// [`ISOTROPY_TOL`].
pub fn solve_certified(data: &BjorlingData) -> Result<IsotropicCurve> {
    let c = solve(data)?;
    if c.is_certified(ISOTROPY_TOL) {
        Ok(c)
    } else {
        Err(Error::IsotropyCertificateFailed {
            residual: c.isotropy_residual(),
            tolerance: ISOTROPY_TOL,
        })
    }
}
