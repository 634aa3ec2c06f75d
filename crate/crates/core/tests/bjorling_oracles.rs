use std::time::Instant;

use bjorling_core::analytic::SUP_NORM_SAMPLES;
use bjorling_core::bjorling::presets::{
    catenoid_closed_form, helicoid_closed_form, lorentz_plane_closed_form,
};
use bjorling_core::bjorling::{
    certify_patch, eta_budget, local_geometry, margin_of, sample_patch, solve, BjorlingData,
    Preset, MARGIN_GRID,
};
use bjorling_core::metric::{MetricTag, Vec3C, Vec3R};
use bjorling_core::{Complex64, Tolerances};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn max_grid_error(preset: Preset, oracle: fn(f64, f64) -> Vec3R) -> f64 {
    let s = preset.build(48).unwrap();
    let curve = solve(&s.data).unwrap();
    let patch = sample_patch(&curve, s.u_range, (-0.5, 0.5), 50, 50).unwrap();
    let mut worst: f64 = 0.0;
    for j in 0..patch.nv {
        for i in 0..patch.nu {
            let (u, v) = patch.param(i, j);
            worst = worst.max((patch.positions[patch.index(i, j)] - oracle(u, v)).max_abs());
        }
    }
    worst
}

#[test]
fn catenoid_and_helicoid_match_closed_forms() {
    for (preset, oracle) in [
        (
            Preset::Catenoid,
            catenoid_closed_form as fn(f64, f64) -> Vec3R,
        ),
        (Preset::Helicoid, helicoid_closed_form),
        (Preset::LorentzPlane, lorentz_plane_closed_form),
    ] {
        let t = Instant::now();
        let err = max_grid_error(preset, oracle);
        let elapsed = t.elapsed().as_secs_f64();
        assert!(err < 1e-10, "{}: {err:e}", preset.name());
        // Generous bound: debug builds are an order of magnitude slower.
        assert!(elapsed < 10.0, "{}: {elapsed}s", preset.name());
    }
}

#[test]
fn gallery_certifies() {
    let tol = Tolerances::default();
    for preset in Preset::all() {
        let s = preset.build(48).unwrap();
        let curve = solve(&s.data).unwrap();
        let patch = sample_patch(&curve, s.u_range, s.v_range, 40, 40).unwrap();
        let cert = certify_patch(&curve, &patch);
        for (name, value, bound, pass) in cert.checks(&tol) {
            assert!(
                pass,
                "{}: {name} = {value:e} (bound {bound:e})",
                preset.name()
            );
        }
        assert!(cert.curvature_nodes > 0 && cert.stencil_nodes > 0);
    }
}

#[test]
fn bjorling_boundary_conditions() {
    for preset in Preset::all() {
        let s = preset.build(48).unwrap();
        let curve = solve(&s.data).unwrap();
        let d = s.data.domain();
        for u in d.interval_samples(200) {
            let g = local_geometry(&curve, Complex64::new(u, 0.0)).unwrap();
            let a = s.data.a().eval_real(u).unwrap().re();
            let n = s.data.n().eval_real(u).unwrap().re();
            assert!(
                (g.position - a).max_abs() < 1e-10,
                "{} position at {u}",
                preset.name()
            );
            assert!(
                (g.normal - n).max_abs() < 1e-8,
                "{} normal at {u}: {:?} vs {:?}",
                preset.name(),
                g.normal,
                n
            );
        }
    }
}

#[test]
fn default_normal_is_admissible() {
    let s = Preset::Helicoid.build(48).unwrap();
    let data = BjorlingData::with_default_normal(s.data.a().clone(), MetricTag::Euclidean).unwrap();
    assert!(data.validate().is_empty());
    let s = Preset::LorentzPlane.build(48).unwrap();
    let data = BjorlingData::with_default_normal(s.data.a().clone(), MetricTag::Lorentz).unwrap();
    assert!(data.validate().is_empty());
}

/// Random entire perturbation `Σ c_k t^k`, `t = (w − u₀)/R`, with `|c_k| ≤ 1`.
struct Poly(Vec<Complex64>);

impl Poly {
    fn random(rng: &mut ChaCha8Rng) -> Self {
        let deg = rng.random_range(0..6);
        Poly(
            (0..=deg)
                .map(|_| {
                    Complex64::from_polar(
                        rng.random_range(0.0..1.0),
                        rng.random_range(0.0..std::f64::consts::TAU),
                    )
                })
                .collect(),
        )
    }

    fn eval(&self, t: Complex64) -> Complex64 {
        self.0
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * t + c)
    }
}

#[test]
fn eta_lemma_randomised() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for preset in [Preset::LorentzPlane, Preset::LorentzBoosted(0.5)] {
        let s = preset.build(48).unwrap();
        let curve = solve(&s.data).unwrap();
        let budget = eta_budget(&curve).unwrap();
        assert!(budget.verify());
        let d = curve.domain();
        let points = d.closed_disc_samples(SUP_NORM_SAMPLES, MARGIN_GRID);
        let phi0: Vec<Vec3C> = points
            .iter()
            .map(|&w| curve.phi().eval_unchecked(w))
            .collect();
        let ts: Vec<Complex64> = points
            .iter()
            .map(|&w| (w - Complex64::new(d.center(), 0.0)) / d.radius())
            .collect();
        let mut violations = 0;
        for trial in 0..1000 {
            let polys = [
                Poly::random(&mut rng),
                Poly::random(&mut rng),
                Poly::random(&mut rng),
            ];
            // Half the trials push every component to the edge of the budget.
            let target = if trial % 2 == 0 {
                0.999
            } else {
                rng.random_range(0.0..0.999)
            } * budget.eta;
            let sups: Vec<f64> = polys
                .iter()
                .map(|p| {
                    ts.iter()
                        .map(|&t| p.eval(t).norm())
                        .fold(0.0, f64::max)
                        .max(1e-300)
                })
                .collect();
            let mut min_margin = f64::INFINITY;
            for (k, (&t, p0)) in ts.iter().zip(&phi0).enumerate() {
                let delta: [Complex64; 3] =
                    std::array::from_fn(|i| polys[i].eval(t) * (target / sups[i]));
                let f = Vec3C::new(p0.x + delta[0], p0.y + delta[1], p0.z + delta[2]);
                for (fi, pi) in [(f.x, p0.x), (f.y, p0.y), (f.z, p0.z)] {
                    assert!(
                        (fi.norm() - pi.norm()).abs() < budget.eta,
                        "precondition at sample {k}"
                    );
                }
                min_margin = min_margin.min(margin_of(MetricTag::Lorentz, f));
            }
            if !(min_margin > 0.0) {
                violations += 1;
            }
        }
        assert_eq!(violations, 0, "{}", preset.name());
    }
}
