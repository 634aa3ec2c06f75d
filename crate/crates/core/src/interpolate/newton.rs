use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{LinearizedProblem, PivotStrategy};
use crate::analytic::{Series, SeriesVec3, SUP_NORM_SAMPLES};
use crate::bjorling::VALIDATION_SAMPLES;
use crate::error::{Error, Result};
use crate::metric::MetricTag;
use crate::tolerance::{Tolerances, NEWTON_TOL};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NewtonOptions {
    pub max_iter: usize,
    pub tol: f64,
    pub pivot: PivotStrategy,
    pub tolerances: Tolerances,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions {
            max_iter: 20,
            tol: NEWTON_TOL,
            pivot: PivotStrategy::Largest,
            tolerances: Tolerances::default(),
        }
    }
}

/// Converged iterate of the chord method.
#[derive(Clone, Debug)]
pub struct NewtonState {
    /// `γ = id + V_total`, `γ(u₀) = u₀`.
    pub gamma: Series,
    pub d: SeriesVec3,
    pub residual_history: Vec<f64>,
    pub iterations: usize,
    /// `max |Im d|` on `I`.
    pub d_imag_max: f64,
    /// `max |Re((a + iσd)∘γ)(u) − Re C(u)|` on `I`.
    pub trace_residual: f64,
    /// `max |Re(a + iσd)(u) − a(u)|` on `I`.
    pub boundary_residual: f64,
}

/// Chord Newton for `(a + iσd) ∘ γ = C` with the derivative frozen at
/// `(id, d₀)`; `σ = +1` (Lorentz) or `−1` (Euclidean).
///
/// Each step solves `(a' + iσd₀')V + iσd̃ = C − (a + iσd)∘γ` and updates
/// `γ += V`, `d += d̃`. The residual must fall strictly at every step.
pub fn chord_newton(
    c: &SeriesVec3,
    a: &SeriesVec3,
    d0: &SeriesVec3,
    metric: MetricTag,
    opts: &NewtonOptions,
) -> Result<NewtonState> {
    let domain = a.domain();
    if c.domain() != domain || d0.domain() != domain {
        return Err(Error::DomainMismatch);
    }
    let sigma = metric.isotropic_sign();
    let isig = Complex64::new(0.0, sigma);
    let degree = a.degree().max(d0.degree()).max(c.degree());
    let b0 = d0.scale_real(sigma);
    let mut gamma = Series::identity(domain, degree);
    let mut d = d0.with_degree(degree);
    let mut history: Vec<f64> = Vec::new();
    let probe = domain.circle_points(4 * (degree + 1), 0.9 * domain.radius(), 0.0);

    for k in 0..=opts.max_iter {
        check_image(&gamma, &probe)?;
        let f = a.add(&d.scale(isig))?;
        let composed = f.compose_near_identity_with(&gamma, opts.tolerances.refit)?;
        let r = c.sub(&composed)?;
        let res = r.sup_norm(SUP_NORM_SAMPLES).raw;
        if let Some(&prev) = history.last() {
            if !(res < prev) {
                history.push(res);
                return Err(Error::ResidualIncreased {
                    iteration: k,
                    previous: prev,
                    current: res,
                });
            }
        }
        history.push(res);
        if res < opts.tol {
            return finish(c, a, &f, &composed, gamma, d, history, k);
        }
        if k == opts.max_iter {
            break;
        }
        let lp = LinearizedProblem::new(a.clone(), b0.clone(), r)?;
        let sol = lp.solve_with(opts.pivot, &opts.tolerances)?;
        gamma = gamma.add(&sol.v)?;
        d = d.add(&sol.d_tilde.scale_real(sigma))?.with_degree(degree);
    }
    Err(Error::NoConvergence {
        iterations: opts.max_iter,
        residual: *history.last().unwrap_or(&f64::INFINITY),
    })
}

fn check_image(gamma: &Series, probe: &[Complex64]) -> Result<()> {
    let r = gamma.domain().radius();
    for &w in probe {
        let g = gamma.eval_unchecked(w);
        if !((g - gamma.center()).norm() < r) {
            return Err(Error::DomainEscape { point: g });
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn finish(
    c: &SeriesVec3,
    a: &SeriesVec3,
    f: &SeriesVec3,
    composed: &SeriesVec3,
    gamma: Series,
    d: SeriesVec3,
    residual_history: Vec<f64>,
    iterations: usize,
) -> Result<NewtonState> {
    let mut trace: f64 = 0.0;
    let mut boundary: f64 = 0.0;
    for u in a.domain().interval_samples(VALIDATION_SAMPLES) {
        let w = Complex64::new(u, 0.0);
        trace = trace.max((composed.eval_unchecked(w).re() - c.eval_unchecked(w).re()).max_abs());
        boundary = boundary.max((f.eval_unchecked(w).re() - a.eval_unchecked(w).re()).max_abs());
    }
    Ok(NewtonState {
        d_imag_max: d.max_imag_on_interval(),
        gamma,
        d,
        residual_history,
        iterations,
        trace_residual: trace,
        boundary_residual: boundary,
    })
}
