//! Inversion of `(V, d̃) ↦ (a' + i d₀')V + i d̃` on the plane-constrained
//! space `Jₙ`, following the proof of Prop. "invertible".

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analytic::{CircleSampler, Series, SeriesVec3};
use crate::bjorling::VALIDATION_SAMPLES;
use crate::error::{Error, Result};
use crate::metric::{cross, MetricTag, Vec3C};
use crate::tolerance::{Tolerances, PARALLEL_TOL};

/// Which pair of the three scalar equations determines `Ṽ`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum PivotStrategy {
    /// Drop the equation of the largest `|Δᵢ|` at each point (lowest index
    /// on ties).
    #[default]
    Largest,
    /// Always drop equation `k` (0-based); the paper's choice is `Fixed(2)`.
    Fixed(usize),
}

/// Base data `a`, `d₀` (real on `I`), the plane normal `Δ = d₀' ×_E a'` and
/// a right-hand side `s`.
#[derive(Clone, Debug)]
pub struct LinearizedProblem {
    a: SeriesVec3,
    d0: SeriesVec3,
    delta: SeriesVec3,
    s: SeriesVec3,
}

#[derive(Clone, Debug)]
pub struct LinearizedSolution {
    pub v: Series,
    pub d_tilde: SeriesVec3,
    pub v_tilde: Series,
    /// `m = m₁ + i m₂` of Eq. (defnm).
    pub m: Series,
    pub f: SeriesVec3,
    pub d_tilde_tilde: SeriesVec3,
    /// `sup |(a' + i d₀')V + i d̃ − s|` over `I` and a lattice of `Ω̄`.
    pub residual: f64,
    /// Largest relative violation of `Re s' ⊥ Δ` on `I`.
    pub plane_violation: f64,
    /// Largest `|Re F|` on `I`.
    pub re_f_max: f64,
}

impl LinearizedProblem {
    pub fn new(a: SeriesVec3, d0: SeriesVec3, s: SeriesVec3) -> Result<Self> {
        if a.domain() != d0.domain() || a.domain() != s.domain() {
            return Err(Error::DomainMismatch);
        }
        let a = a.real_part();
        let d0 = d0.real_part();
        let delta = d0
            .derivative()
            .cross(MetricTag::Euclidean, &a.derivative())?;
        Ok(LinearizedProblem { a, d0, delta, s })
    }

    pub fn a(&self) -> &SeriesVec3 {
        &self.a
    }

    pub fn d0(&self) -> &SeriesVec3 {
        &self.d0
    }

    pub fn delta(&self) -> &SeriesVec3 {
        &self.delta
    }

    pub fn s(&self) -> &SeriesVec3 {
        &self.s
    }

    /// `a' + i d₀'`.
    pub fn frame(&self) -> Result<SeriesVec3> {
        self.a.derivative().add(&self.d0.derivative().mul_i())
    }

    /// Applies the forward operator to a candidate pair.
    pub fn apply(&self, v: &Series, d_tilde: &SeriesVec3) -> Result<SeriesVec3> {
        self.frame()?.mul_scalar(v)?.add(&d_tilde.mul_i())
    }

    /// Checks `Δ ≠ 0` and the plane constraint on `I`; returns the largest
    /// relative violation.
    pub fn check_plane(&self, tol: &Tolerances) -> Result<f64> {
        let tau = self.s.derivative();
        let u_samples = self.a.domain().interval_samples(VALIDATION_SAMPLES);
        let mut scale: f64 = 0.0;
        let mut rows = Vec::with_capacity(u_samples.len());
        for &u in &u_samples {
            let w = Complex64::new(u, 0.0);
            let delta = self.delta.eval_unchecked(w).re();
            let big = delta.max_abs();
            if !(big > PARALLEL_TOL) {
                return Err(Error::DegeneratePlane { u });
            }
            let re_tau = tau.eval_unchecked(w).re();
            scale = scale.max(re_tau.max_abs());
            rows.push((u, delta.scale(1.0 / delta.norm()).dot(re_tau).abs()));
        }
        let mut worst = (0.0, u_samples[0]);
        if scale > 0.0 {
            for (u, x) in rows {
                if x / scale > worst.0 {
                    worst = (x / scale, u);
                }
            }
        }
        if worst.0 > tol.plane_constraint {
            return Err(Error::NotInJn {
                u: worst.1,
                violation: worst.0,
            });
        }
        Ok(worst.0)
    }

    pub fn solve(&self, pivot: PivotStrategy) -> Result<LinearizedSolution> {
        self.solve_with(pivot, &Tolerances::default())
    }

    pub fn solve_with(&self, pivot: PivotStrategy, tol: &Tolerances) -> Result<LinearizedSolution> {
        if let PivotStrategy::Fixed(k) = pivot {
            if k > 2 {
                return Err(Error::InvalidArgument(format!(
                    "pivot index {k} out of range 0..=2"
                )));
            }
        }
        let plane_violation = self.check_plane(tol)?;
        let domain = self.s.domain();
        let degree = self.s.degree().max(self.a.degree());
        let i = Complex64::i();

        // (1) τ = s'.
        let tau = self.s.derivative();
        let re_tau = tau.real_part();
        let ap = self.a.derivative();
        let bp = self.d0.derivative();
        let app = ap.derivative();
        let bpp = bp.derivative();

        // (2)-(3) Ṽ₁, Ṽ₂ from two of the three equations
        //     Re τ = a' Ṽ₁ − d₀' Ṽ₂,
        // evaluated through the analytic continuations and refitted.
        let sampler = CircleSampler::new(domain, degree);
        let fit = sampler.fit_components_floored::<2>("v_tilde", tol.refit, 1.0, |w| {
            let rt = re_tau.eval_unchecked(w);
            let x = ap.eval_unchecked(w);
            let y = bp.eval_unchecked(w);
            let delta = cross(MetricTag::Euclidean, y, x);
            let k = match pivot {
                PivotStrategy::Fixed(k) => k,
                PivotStrategy::Largest => largest(delta),
            };
            let (p, q) = ((k + 1) % 3, (k + 2) % 3);
            // [x_p  -y_p] [Ṽ₁]   [rt_p]
            // [x_q  -y_q] [Ṽ₂] = [rt_q],  det = Δ_k.
            let det = y.get(p) * x.get(q) - y.get(q) * x.get(p);
            let v1 = (y.get(p) * rt.get(q) - y.get(q) * rt.get(p)) / det;
            let v2 = (x.get(p) * rt.get(q) - x.get(q) * rt.get(p)) / det;
            Ok([v1, v2])
        })?;
        let [c1, c2] = fit.value;
        let v1t = Series::from_raw(domain, c1).real_part();
        let v2t = Series::from_raw(domain, c2).real_part();
        let v_tilde = v1t.add(&v2t.mul_i())?;

        // (4) d̃̃ = −i(τ − (a' + i d₀')Ṽ), real on I.
        let frame = ap.add(&bp.mul_i())?;
        let d_tilde_tilde = tau.sub(&frame.mul_scalar(&v_tilde)?)?.scale(-i);

        // (5) Eq. (defnm): project a'' and d₀'' onto span(a', −d₀') so that
        //     a'' V₁ − d₀'' V₂ = a' m₁ − d₀' m₂ with m linear in (V₁, V₂).
        let proj = sampler.fit_components_floored::<4>("projection", tol.refit, 1.0, |w| {
            let x = ap.eval_unchecked(w);
            let y = bp.eval_unchecked(w);
            let (pa1, pa2) = plane_coords(x, y, app.eval_unchecked(w));
            let (pb1, pb2) = plane_coords(x, y, bpp.eval_unchecked(w));
            Ok([pa1, pa2, pb1, pb2])
        })?;
        let [pa1, pa2, pb1, pb2] = proj.value.map(|c| Series::from_raw(domain, c).real_part());

        // (6) V' = Ṽ − m(V), V(u₀) = 0, solved on real and imaginary parts.
        let (v1, v2) = solve_linear_ode(&v1t, &v2t, [&pa1, &pa2, &pb1, &pb2], degree);
        let v = v1.add(&v2.mul_i())?;
        let m1 = pa1.mul(&v1)?.sub(&pb1.mul(&v2)?)?;
        let m2 = pa2.mul(&v1)?.sub(&pb2.mul(&v2)?)?;
        let m = m1.add(&m2.mul_i())?;

        // (7) F = (a'' + i d₀'')V − (a' + i d₀')m; Re F vanishes on I.
        let frame_p = app.add(&bpp.mul_i())?;
        let f = frame_p.mul_scalar(&v)?.sub(&frame.mul_scalar(&m)?)?;
        let mut re_f_max: f64 = 0.0;
        let mut re_f_at = domain.center();
        let mut f_scale: f64 = 0.0;
        for u in domain.interval_samples(VALIDATION_SAMPLES) {
            let w = Complex64::new(u, 0.0);
            let x = f.eval_unchecked(w).re().max_abs();
            f_scale = f_scale
                .max(frame_p.eval_unchecked(w).max_abs() * v.eval_unchecked(w).norm())
                .max(frame.eval_unchecked(w).max_abs() * m.eval_unchecked(w).norm());
            if x > re_f_max {
                re_f_max = x;
                re_f_at = u;
            }
        }
        if re_f_max > tol.plane_constraint * f_scale.max(1.0) {
            return Err(Error::ReFNotZero {
                u: re_f_at,
                value: re_f_max,
            });
        }

        // (8) d̃ = ∫ (iF + d̃̃).
        let d_tilde = f
            .mul_i()
            .add(&d_tilde_tilde)?
            .antiderivative()
            .with_degree(degree)
            .real_part();

        // (9) Reconstruction.
        let recon = self.apply(&v, &d_tilde)?.sub(&self.s)?;
        let points = crate::bjorling::residual_sample_points(domain);
        let residual = points
            .iter()
            .map(|&w| recon.eval_unchecked(w).max_abs())
            .fold(0.0, f64::max);
        let s_scale = points
            .iter()
            .map(|&w| self.s.eval_unchecked(w).max_abs())
            .fold(1.0, f64::max);
        if !(residual <= tol.reconstruction * s_scale) {
            return Err(Error::ReconstructionFailed {
                residual,
                tolerance: tol.reconstruction * s_scale,
            });
        }
        Ok(LinearizedSolution {
            v,
            d_tilde,
            v_tilde,
            m,
            f,
            d_tilde_tilde,
            residual,
            plane_violation,
            re_f_max,
        })
    }
}

fn largest(delta: Vec3C) -> usize {
    let mags = delta.to_array().map(|x| x.norm());
    let mut k = 0;
    for j in 1..3 {
        if mags[j] > mags[k] {
            k = j;
        }
    }
    k
}

/// Coordinates `(p₁, p₂)` of the Gram projection of `z` onto the plane,
/// written as `p₁ x − p₂ y`.
fn plane_coords(x: Vec3C, y: Vec3C, z: Vec3C) -> (Complex64, Complex64) {
    let yn = -y;
    let (g11, g12, g22) = (x.dot(x), x.dot(yn), yn.dot(yn));
    let (r1, r2) = (x.dot(z), yn.dot(z));
    let det = g11 * g22 - g12 * g12;
    ((r1 * g22 - r2 * g12) / det, (g11 * r2 - g12 * r1) / det)
}

/// Forward recurrence for
///   V₁' = Ṽ₁ − (pa₁ V₁ − pb₁ V₂),  V₂' = Ṽ₂ − (pa₂ V₁ − pb₂ V₂),
/// with `V₁(u₀) = V₂(u₀) = 0`.
fn solve_linear_ode(
    v1t: &Series,
    v2t: &Series,
    p: [&Series; 4],
    degree: usize,
) -> (Series, Series) {
    let domain = v1t.domain();
    let zero = Complex64::new(0.0, 0.0);
    let mut v1 = vec![zero; degree + 1];
    let mut v2 = vec![zero; degree + 1];
    let [pa1, pa2, pb1, pb2] = p;
    for k in 0..degree {
        let mut m1 = zero;
        let mut m2 = zero;
        for j in 0..=k {
            m1 += pa1.coeff(j) * v1[k - j] - pb1.coeff(j) * v2[k - j];
            m2 += pa2.coeff(j) * v1[k - j] - pb2.coeff(j) * v2[k - j];
        }
        v1[k + 1] = (v1t.coeff(k) - m1) / (k + 1) as f64;
        v2[k + 1] = (v2t.coeff(k) - m2) / (k + 1) as f64;
    }
    (Series::from_raw(domain, v1), Series::from_raw(domain, v2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::curves;
    use crate::bjorling::{presets::lorentz_plane_conjugate, Preset};

    const N: usize = 48;

    fn base() -> (SeriesVec3, SeriesVec3) {
        let d = Preset::LorentzPlane.domain();
        (curves::circle(d, 1.0, N), lorentz_plane_conjugate(d, N))
    }

    fn shifted_identity(d: crate::analytic::DiscDomain) -> Series {
        Series::identity(d, N).add_constant(Complex64::new(-d.center(), 0.0))
    }

    /// Rotation about `(1, 1, 1)/√3` by 0.7 rad.
    fn rotate(v: &SeriesVec3) -> SeriesVec3 {
        let (s, c) = 0.7f64.sin_cos();
        let k = 1.0 / 3f64.sqrt();
        let t = 1.0 - c;
        let r = [
            [c + k * k * t, k * k * t - k * s, k * k * t + k * s],
            [k * k * t + k * s, c + k * k * t, k * k * t - k * s],
            [k * k * t - k * s, k * k * t + k * s, c + k * k * t],
        ];
        let comp = |i: usize| {
            (0..3)
                .map(|j| v.component(j).scale_real(r[i][j]))
                .reduce(|x, y| x.add(&y).unwrap())
                .unwrap()
        };
        SeriesVec3::new(comp(0), comp(1), comp(2)).unwrap()
    }

    #[test]
    fn pure_imaginary_rhs() {
        let (a, d0) = base();
        let d = a.domain();
        let h = curves::polynomial(d, &[0.0, 0.3, 0.0, 1.0], &[0.0, 0.0, 2.0], &[0.0, -1.0], N);
        let lp = LinearizedProblem::new(a, d0, h.mul_i()).unwrap();
        let sol = lp.solve(PivotStrategy::Largest).unwrap();
        assert!(sol.v.sup_norm_default().raw < 1e-12);
        assert!(sol.d_tilde.sub(&h).unwrap().sup_norm_default().raw < 1e-12);
    }

    #[test]
    fn planar_round_trip() {
        let (a, d0) = base();
        let d = a.domain();
        let v_in = shifted_identity(d);
        let lp0 = LinearizedProblem::new(a.clone(), d0.clone(), SeriesVec3::zero(d, N)).unwrap();
        let s = lp0.apply(&v_in, &SeriesVec3::zero(d, N)).unwrap();
        let lp = LinearizedProblem::new(a, d0, s).unwrap();
        for u in d.interval_samples(11) {
            let delta = lp.delta().eval_real(u).unwrap().re();
            assert!((delta - crate::metric::Vec3R::new(0.0, 0.0, -1.0)).max_abs() < 1e-13);
        }
        let sol = lp.solve(PivotStrategy::Largest).unwrap();
        assert!(sol.v.sub(&v_in).unwrap().sup_norm_default().raw < 1e-9);
        assert!(sol.d_tilde.sup_norm_default().raw < 1e-9);
        assert!(sol.residual < 1e-9);
        assert!(sol.re_f_max < 1e-9);
        assert_eq!(sol.v.coeff(0), Complex64::new(0.0, 0.0));
        assert!(sol
            .d_tilde
            .components()
            .iter()
            .all(|c| c.coeff(0) == Complex64::new(0.0, 0.0)));
        assert!(sol.d_tilde.is_real_on_interval(1e-12));
    }

    #[test]
    fn right_inverse_on_mixed_input() {
        let (a, d0) = base();
        let d = a.domain();
        let v_in = Series::sin_affine(d, 0.5, 0.0, N)
            .add(&shifted_identity(d).mul(&shifted_identity(d)).unwrap())
            .unwrap();
        let dt_in =
            curves::polynomial(d, &[0.0, 0.1], &[0.0, 0.0, -0.2], &[0.0, 0.05, 0.0, 0.3], N);
        let lp0 = LinearizedProblem::new(a.clone(), d0.clone(), SeriesVec3::zero(d, N)).unwrap();
        let s = lp0.apply(&v_in, &dt_in).unwrap();
        let sol = LinearizedProblem::new(a, d0, s)
            .unwrap()
            .solve(PivotStrategy::Largest)
            .unwrap();
        assert!(sol.residual < 1e-9);
        assert!(sol.v.sub(&v_in).unwrap().sup_norm_default().raw < 1e-9);
        assert!(sol.d_tilde.sub(&dt_in).unwrap().sup_norm_default().raw < 1e-9);
    }

    #[test]
    fn vertical_rhs_is_not_in_jn() {
        let (a, d0) = base();
        let d = a.domain();
        let s = curves::polynomial(d, &[0.0], &[0.0], &[0.0, 1.0], N);
        let err = LinearizedProblem::new(a, d0, s)
            .unwrap()
            .solve(PivotStrategy::Largest)
            .unwrap_err();
        match err {
            Error::NotInJn { violation, .. } => assert!((violation - 1.0).abs() < 1e-12),
            e => panic!("expected NotInJn, got {e:?}"),
        }
    }

    #[test]
    fn zero_conjugate_degenerates() {
        let (a, _) = base();
        let d = a.domain();
        let err = LinearizedProblem::new(a, SeriesVec3::zero(d, N), SeriesVec3::zero(d, N))
            .unwrap()
            .solve(PivotStrategy::Largest)
            .unwrap_err();
        assert_eq!(err.kind(), "DegeneratePlane");
    }

    #[test]
    fn pivot_out_of_range() {
        let (a, d0) = base();
        let d = a.domain();
        let lp = LinearizedProblem::new(a, d0, SeriesVec3::zero(d, N)).unwrap();
        assert_eq!(
            lp.solve(PivotStrategy::Fixed(3)).unwrap_err().kind(),
            "InvalidArgument"
        );
    }

    #[test]
    fn pivot_choice_does_not_matter() {
        let (a, d0) = base();
        let (a, d0) = (rotate(&a), rotate(&d0));
        let d = a.domain();
        let v_in = Series::sin_affine(d, 0.8, 0.0, N);
        let dt_in = curves::polynomial(d, &[0.0, 0.2], &[0.0, 0.0, 0.1], &[0.0, -0.3], N);
        let lp0 = LinearizedProblem::new(a.clone(), d0.clone(), SeriesVec3::zero(d, N)).unwrap();
        let s = lp0.apply(&v_in, &dt_in).unwrap();
        let lp = LinearizedProblem::new(a, d0, s).unwrap();
        let delta = lp.delta().eval_real(0.0).unwrap().re();
        assert!(delta.to_array().iter().all(|x| x.abs() > 0.1), "{delta:?}");
        let reference = lp.solve(PivotStrategy::Largest).unwrap();
        for k in 0..3 {
            let sol = lp.solve(PivotStrategy::Fixed(k)).unwrap();
            assert!(
                sol.v.sub(&reference.v).unwrap().sup_norm_default().raw < 1e-9,
                "pivot {k}"
            );
            assert!(
                sol.d_tilde
                    .sub(&reference.d_tilde)
                    .unwrap()
                    .sup_norm_default()
                    .raw
                    < 1e-9
            );
        }
        assert!(reference.v.sub(&v_in).unwrap().sup_norm_default().raw < 1e-9);
    }
}
