//! Björling data of the classical examples, with domains that keep each
//! patch inside the disc of convergence.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::BjorlingData;
use crate::analytic::{curves, DiscDomain, Series, SeriesVec3};
use crate::error::Result;
use crate::metric::{MetricTag, Vec3R};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Preset {
    /// Circle with the outward-pointing normal reversed, Euclidean.
    Catenoid,
    /// Vertical axis with a rotating normal, Euclidean.
    Helicoid,
    /// `a = (u − u³/3, 0, u²)`, `n = (2u, 0, u² − 1)/(1 + u²)`, Euclidean.
    Enneper,
    /// Unit circle with `n = e₃`: the plane `z = 0`, Lorentz.
    LorentzPlane,
    /// Unit circle with the boosted normal of rapidity `θ`, Lorentz.
    LorentzBoosted(f64),
}

#[derive(Clone, Debug)]
pub struct PresetSurface {
    pub name: String,
    pub data: BjorlingData,
    pub u_range: (f64, f64),
    pub v_range: (f64, f64),
}

pub const DEFAULT_BOOST: f64 = 0.5;

impl Preset {
    pub fn all() -> Vec<Preset> {
        vec![
            Preset::Catenoid,
            Preset::Helicoid,
            Preset::Enneper,
            Preset::LorentzPlane,
            Preset::LorentzBoosted(DEFAULT_BOOST),
        ]
    }

    pub fn name(&self) -> String {
        match self {
            Preset::Catenoid => "catenoid".into(),
            Preset::Helicoid => "helicoid".into(),
            Preset::Enneper => "enneper".into(),
            Preset::LorentzPlane => "lorentz-plane".into(),
            Preset::LorentzBoosted(t) => format!("lorentz-boosted({t})"),
        }
    }

    pub fn metric(&self) -> MetricTag {
        match self {
            Preset::Catenoid | Preset::Helicoid | Preset::Enneper => MetricTag::Euclidean,
            Preset::LorentzPlane | Preset::LorentzBoosted(_) => MetricTag::Lorentz,
        }
    }

    pub fn domain(&self) -> DiscDomain {
        match self {
            Preset::Catenoid | Preset::Helicoid => DiscDomain::new(PI, 3.5, PI),
            Preset::Enneper => DiscDomain::new(0.0, 0.5, 0.35),
            Preset::LorentzPlane | Preset::LorentzBoosted(_) => DiscDomain::new(0.0, 1.0, 0.8),
        }
        .expect("preset domains are valid")
    }

    pub fn v_half_range(&self) -> f64 {
        match self {
            Preset::Enneper => 0.3,
            _ => 0.5,
        }
    }

    pub fn build(&self, degree: usize) -> Result<PresetSurface> {
        let d = self.domain();
        let metric = self.metric();
        let (a, n) = match *self {
            Preset::Catenoid => {
                let a = curves::circle(d, 1.0, degree);
                let n = a.neg();
                (a, n)
            }
            Preset::Helicoid => (
                curves::line(d, Vec3R::new(0.0, 0.0, 1.0), degree),
                curves::circle(d, 1.0, degree),
            ),
            Preset::Enneper => {
                let a = curves::polynomial(
                    d,
                    &[0.0, 1.0, 0.0, -1.0 / 3.0],
                    &[0.0],
                    &[0.0, 0.0, 1.0],
                    degree,
                );
                let num = curves::polynomial(d, &[0.0, 2.0], &[0.0], &[-1.0, 0.0, 1.0], degree);
                let den = Series::from_real_polynomial(d, &[1.0, 0.0, 1.0], degree).recip()?;
                (a, num.mul_scalar(&den)?)
            }
            Preset::LorentzPlane => (
                curves::circle(d, 1.0, degree),
                curves::boosted_normal(d, 0.0, degree),
            ),
            Preset::LorentzBoosted(t) => (
                curves::circle(d, 1.0, degree),
                curves::boosted_normal(d, t, degree),
            ),
        };
        let (lo, hi) = d.interval();
        let h = self.v_half_range();
        Ok(PresetSurface {
            name: self.name(),
            data: BjorlingData::new(a, n, metric)?,
            u_range: (lo, hi),
            v_range: (-h, h),
        })
    }
}

impl std::str::FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "catenoid" => return Ok(Preset::Catenoid),
            "helicoid" => return Ok(Preset::Helicoid),
            "enneper" => return Ok(Preset::Enneper),
            "lorentz-plane" => return Ok(Preset::LorentzPlane),
            "lorentz-boosted" => return Ok(Preset::LorentzBoosted(DEFAULT_BOOST)),
            _ => {}
        }
        if let Some(arg) = s
            .strip_prefix("lorentz-boosted(")
            .and_then(|r| r.strip_suffix(')'))
        {
            return arg
                .trim()
                .parse()
                .map(Preset::LorentzBoosted)
                .map_err(|e| format!("bad rapidity '{arg}': {e}"));
        }
        Err(format!("unknown preset '{s}'"))
    }
}

/// `Re f` of the catenoid preset, by hand.
pub fn catenoid_closed_form(u: f64, v: f64) -> Vec3R {
    Vec3R::new(u.cos() * v.cosh(), u.sin() * v.cosh(), -v)
}

/// `Re f` of the helicoid preset, by hand.
pub fn helicoid_closed_form(u: f64, v: f64) -> Vec3R {
    Vec3R::new(u.sin() * v.sinh(), -u.cos() * v.sinh(), u)
}

/// `e^v (cos u, sin u, 0)`, the Lorentz plane preset.
pub fn lorentz_plane_closed_form(u: f64, v: f64) -> Vec3R {
    Vec3R::new(v.exp() * u.cos(), v.exp() * u.sin(), 0.0)
}

/// `d₀ = (−sin w, cos w − 1, 0)` of the Lorentz plane preset.
pub fn lorentz_plane_conjugate(d: DiscDomain, degree: usize) -> SeriesVec3 {
    SeriesVec3::new(
        Series::sin_affine(d, 1.0, 0.0, degree).neg(),
        Series::cos_affine(d, 1.0, 0.0, degree).add_constant(Complex64::new(-1.0, 0.0)),
        Series::zero(d, degree),
    )
    .expect("same domain")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bjorling::{certify_patch, conjugate_curve, sample_patch, solve};
    use crate::tolerance::Tolerances;

    #[test]
    fn parse_names() {
        for p in Preset::all() {
            assert_eq!(p.name().parse::<Preset>().unwrap(), p);
        }
        assert!("sphere".parse::<Preset>().is_err());
    }

    #[test]
    fn gallery_certifies() {
        for p in Preset::all() {
            let s = p.build(48).unwrap();
            assert!(
                s.data.validate().is_empty(),
                "{}: {:?}",
                s.name,
                s.data.validate()
            );
            let c = solve(&s.data).unwrap();
            let patch = sample_patch(&c, s.u_range, s.v_range, 40, 40).unwrap();
            let cert = certify_patch(&c, &patch);
            assert!(cert.passes(&Tolerances::default()), "{}: {cert:?}", s.name);
        }
    }

    #[test]
    fn lorentz_plane_conjugate_matches_solver() {
        let s = Preset::LorentzPlane.build(48).unwrap();
        let d = conjugate_curve(&s.data).unwrap();
        let hand = lorentz_plane_conjugate(s.data.domain(), 48);
        let pts = s.data.domain().closed_disc_samples(64, 8);
        assert!(d.with_degree(48).max_distance(&hand, &pts).unwrap() < 1e-13);
    }
}
