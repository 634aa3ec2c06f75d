//! Fixtures shared by the benchmarks.

use bjorling_core::analytic::curves;
use bjorling_core::bjorling::presets::lorentz_plane_conjugate;
use bjorling_core::bjorling::Preset;
use bjorling_core::{Complex64, Series, SeriesVec3};

/// Unit circle and its Lorentz-plane conjugate at `degree`.
pub fn lorentz_base(degree: usize) -> (SeriesVec3, SeriesVec3) {
    let d = Preset::LorentzPlane.domain();
    (
        curves::circle(d, 1.0, degree),
        lorentz_plane_conjugate(d, degree),
    )
}

/// `(a + i d₀) ∘ (id + δ (w − u₀))`, a target the chord method recovers.
pub fn manufactured_target(degree: usize, delta: f64) -> (SeriesVec3, SeriesVec3, SeriesVec3) {
    let (a, d0) = lorentz_base(degree);
    let d = a.domain();
    let shift = Series::identity(d, degree).add_constant(Complex64::new(-d.center(), 0.0));
    let gamma = Series::identity(d, degree)
        .add(&shift.scale_real(delta))
        .expect("same domain");
    let c = a
        .add(&d0.mul_i())
        .and_then(|f| f.compose_near_identity(&gamma))
        .expect("near-identity composition");
    (c, a, d0)
}
