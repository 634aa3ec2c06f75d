use std::f64::consts::PI;

use num_complex::Complex64;

use super::{DiscDomain, REFIT_RADIUS_FRACTION};
use crate::error::{Error, Result};

/// Equispaced samples on a circle `|w - u₀| = ρ` and the discrete Fourier
/// refit that turns pointwise values into Taylor coefficients.
///
/// With `M > N + 1` samples the fit is the least-squares solution of the
/// Vandermonde system, which for equispaced nodes reduces to
/// `c_k = (1/M) Σ_j f(w_j) e^{-ikθ_j} / ρ^k`.
#[derive(Clone, Debug)]
pub struct CircleSampler {
    domain: DiscDomain,
    degree: usize,
    count: usize,
    rho: f64,
}

/// Result of a refit: coefficients plus the residual measured at the
/// midpoints between nodes, relative to nothing (absolute), and the sampled
/// scale it should be compared against.
#[derive(Clone, Debug)]
pub struct CircleFit<T> {
    pub value: T,
    pub residual: f64,
    pub scale: f64,
}

impl CircleSampler {
    /// `M = 4(N+1)` samples at `ρ = 0.9 R`.
    pub fn new(domain: DiscDomain, degree: usize) -> Self {
        CircleSampler {
            domain,
            degree,
            count: 4 * (degree + 1),
            rho: REFIT_RADIUS_FRACTION * domain.radius(),
        }
    }

    pub fn with_params(domain: DiscDomain, degree: usize, count: usize, rho: f64) -> Result<Self> {
        if count < degree + 1 {
            return Err(Error::InvalidArgument(format!(
                "refit needs at least N+1 = {} samples, got {count}",
                degree + 1
            )));
        }
        if !(rho > 0.0 && rho <= domain.radius()) {
            return Err(Error::InvalidArgument(format!(
                "sampling radius {rho} outside (0, R]"
            )));
        }
        Ok(CircleSampler {
            domain,
            degree,
            count,
            rho,
        })
    }

    pub fn domain(&self) -> DiscDomain {
        self.domain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn nodes(&self) -> Vec<Complex64> {
        self.domain.circle_points(self.count, self.rho, 0.0)
    }

    pub fn midpoints(&self) -> Vec<Complex64> {
        self.domain
            .circle_points(self.count, self.rho, PI / self.count as f64)
    }

    /// Taylor coefficients `c_0..c_N` from values at `nodes()`.
    pub fn fit(&self, values: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(values.len(), self.count, "one value per node");
        let m = self.count;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); self.degree + 1];
        let mut inv_rho_k = 1.0;
        for (k, c) in coeffs.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, &f) in values.iter().enumerate() {
                // Reduce the phase index first so large k*j stays exact.
                let idx = (k * j) % m;
                let theta = 2.0 * PI * idx as f64 / m as f64;
                acc += f * Complex64::from_polar(1.0, -theta);
            }
            *c = acc / m as f64 * inv_rho_k;
            inv_rho_k /= self.rho;
        }
        coeffs
    }

    /// Samples a `K`-component map at the nodes, fits each component and
    /// checks the fit at the midpoints. Fails when the residual exceeds
    /// `tol` times the sampled scale.
    pub fn fit_components<const K: usize>(
        &self,
        stage: &'static str,
        tol: f64,
        f: impl FnMut(Complex64) -> Result<[Complex64; K]>,
    ) -> Result<CircleFit<[Vec<Complex64>; K]>> {
        self.fit_components_floored(stage, tol, 0.0, f)
    }

    /// As [`fit_components`](Self::fit_components), but the residual is
    /// compared against `tol * max(scale, floor)`.
    pub fn fit_components_floored<const K: usize>(
        &self,
        stage: &'static str,
        tol: f64,
        floor: f64,
        mut f: impl FnMut(Complex64) -> Result<[Complex64; K]>,
    ) -> Result<CircleFit<[Vec<Complex64>; K]>> {
        let nodes = self.nodes();
        let mut columns: [Vec<Complex64>; K] =
            std::array::from_fn(|_| Vec::with_capacity(nodes.len()));
        let mut scale: f64 = 0.0;
        for &w in &nodes {
            let v = f(w)?;
            for (col, x) in columns.iter_mut().zip(v) {
                scale = scale.max(x.norm());
                col.push(x);
            }
        }
        let coeffs: [Vec<Complex64>; K] = std::array::from_fn(|i| self.fit(&columns[i]));
        let c = self.domain.center();
        let mut residual: f64 = 0.0;
        for w in self.midpoints() {
            let v = f(w)?;
            for (cs, x) in coeffs.iter().zip(v) {
                scale = scale.max(x.norm());
                residual = residual.max((horner(cs, w - c) - x).norm());
            }
        }
        let bound = tol * scale.max(floor);
        if !residual.is_finite() || residual > bound {
            return Err(Error::RefitResidualTooLarge {
                stage,
                residual,
                tolerance: bound,
            });
        }
        Ok(CircleFit {
            value: coeffs,
            residual,
            scale,
        })
    }
}

pub(crate) fn horner(coeffs: &[Complex64], t: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * t + c)
}
