use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analytic::SeriesVec3;
use crate::bjorling::IsotropicCurve;
use crate::error::{Error, Result};
use crate::metric::Vec3R;

pub const MAX_GAUSS_NEWTON_ITER: usize = 50;
const MAX_HALVINGS: usize = 40;

/// Empirical projection of a curve onto the surface `Re C`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContainmentReport {
    pub max_residual: f64,
    pub samples: Vec<f64>,
    /// Minimisers `γ̂(uᵢ)`.
    pub gamma_samples: Vec<Complex64>,
    pub residuals: Vec<f64>,
    /// Samples where Gauss-Newton stopped above the tolerance.
    pub stalled: Vec<usize>,
    pub tolerance: f64,
    pub success: bool,
}

enum Outcome {
    Converged(Complex64, f64),
    Stalled(Complex64, f64),
    Escaped(Complex64),
}

/// Projects each sample `a(uᵢ)` onto `Re C` and reports the distances,
/// without turning stalls into errors.
pub fn containment_report(
    c: &IsotropicCurve,
    a: &SeriesVec3,
    samples: usize,
    tol: f64,
) -> Result<ContainmentReport> {
    let f = c.f();
    if f.domain() != a.domain() {
        return Err(Error::DomainMismatch);
    }
    let phi = f.derivative();
    let us = a.domain().interval_samples(samples);
    let mut report = ContainmentReport {
        max_residual: 0.0,
        samples: us.clone(),
        gamma_samples: Vec::with_capacity(us.len()),
        residuals: Vec::with_capacity(us.len()),
        stalled: Vec::new(),
        tolerance: tol,
        success: true,
    };
    for (idx, &u) in us.iter().enumerate() {
        let target = a.eval_unchecked(Complex64::new(u, 0.0)).re();
        let (w, r) = match project(f, &phi, target, Complex64::new(u, 0.0), tol) {
            Outcome::Converged(w, r) => (w, r),
            Outcome::Stalled(w, r) => {
                report.stalled.push(idx);
                (w, r)
            }
            Outcome::Escaped(point) => return Err(Error::DomainEscape { point }),
        };
        report.gamma_samples.push(w);
        report.residuals.push(r);
        report.max_residual = report.max_residual.max(r);
    }
    report.success = report.stalled.is_empty() && report.max_residual < tol;
    Ok(report)
}

/// Like [`containment_report`] but fails with `NoDescent` at the first
/// sample that stalls above `tol`.
pub fn containment_check(
    c: &IsotropicCurve,
    a: &SeriesVec3,
    samples: usize,
    tol: f64,
) -> Result<ContainmentReport> {
    let report = containment_report(c, a, samples, tol)?;
    if let Some(&idx) = report.stalled.first() {
        return Err(Error::NoDescent {
            u: report.samples[idx],
            residual: report.residuals[idx],
        });
    }
    Ok(report)
}

/// Damped Gauss-Newton on `|Re C(w) − target|²` over `w = x + iy`.
fn project(f: &SeriesVec3, phi: &SeriesVec3, target: Vec3R, start: Complex64, tol: f64) -> Outcome {
    let d = f.domain();
    let dist = |w: Complex64| (f.eval_unchecked(w).re() - target).norm();
    let mut w = start;
    let mut r = dist(w);
    for _ in 0..MAX_GAUSS_NEWTON_ITER {
        if r < tol * 1e-6 {
            break;
        }
        let p = phi.eval_unchecked(w);
        let (jx, jy) = (p.re(), -p.im());
        let res = f.eval_unchecked(w).re() - target;
        let (a11, a12, a22) = (jx.dot(jx), jx.dot(jy), jy.dot(jy));
        let (g1, g2) = (jx.dot(res), jy.dot(res));
        let det = a11 * a22 - a12 * a12;
        if !(det.abs() > f64::MIN_POSITIVE) {
            break;
        }
        let dx = -(a22 * g1 - a12 * g2) / det;
        let dy = -(a11 * g2 - a12 * g1) / det;
        let step = Complex64::new(dx, dy);
        if step.norm() <= 1e-15 * (1.0 + w.norm()) {
            break;
        }
        let mut t = 1.0;
        let mut moved = false;
        let mut left_disc = false;
        for _ in 0..MAX_HALVINGS {
            let trial = w + step * t;
            if !d.contains(trial) {
                left_disc = true;
                t *= 0.5;
                continue;
            }
            let rt = dist(trial);
            if rt < r {
                w = trial;
                r = rt;
                moved = true;
                break;
            }
            t *= 0.5;
        }
        if !moved {
            if left_disc && r >= tol {
                return Outcome::Escaped(w + step);
            }
            break;
        }
    }
    if r < tol {
        Outcome::Converged(w, r)
    } else {
        Outcome::Stalled(w, r)
    }
}
