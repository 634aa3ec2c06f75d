use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Open disc `Ω` of radius `R` about a real center `u₀`, with the interval
/// `I = [u₀ - r, u₀ + r]` inside it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DiscDomain {
    center: f64,
    radius: f64,
    half_width: f64,
}

impl DiscDomain {
    pub fn new(center: f64, radius: f64, half_width: f64) -> Result<Self> {
        if !(center.is_finite() && radius.is_finite() && half_width.is_finite()) {
            return Err(Error::InvalidArgument(
                "domain parameters must be finite".into(),
            ));
        }
        if radius <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "disc radius must be positive, got {radius}"
            )));
        }
        if !(half_width > 0.0 && half_width < radius) {
            return Err(Error::InvalidArgument(format!(
                "interval half-width must satisfy 0 < r < R, got r = {half_width}, R = {radius}"
            )));
        }
        Ok(DiscDomain {
            center,
            radius,
            half_width,
        })
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.center - self.half_width, self.center + self.half_width)
    }

    pub fn contains(&self, w: Complex64) -> bool {
        (w - self.center).norm() <= self.radius * (1.0 + 1e-12)
    }

    pub fn check(&self, w: Complex64) -> Result<()> {
        if self.contains(w) {
            Ok(())
        } else {
            Err(Error::OutOfDomain {
                point: w,
                center: self.center,
                radius: self.radius,
            })
        }
    }

    /// `n` equispaced points of `I`, endpoints included.
    pub fn interval_samples(&self, n: usize) -> Vec<f64> {
        let (lo, hi) = self.interval();
        let n = n.max(2);
        (0..n)
            .map(|j| lo + (hi - lo) * j as f64 / (n - 1) as f64)
            .collect()
    }

    /// `n` Chebyshev points of the first kind on `I`.
    pub fn chebyshev_samples(&self, n: usize) -> Vec<f64> {
        (0..n)
            .map(|j| {
                let t = (PI * (j as f64 + 0.5) / n as f64).cos();
                self.center + self.half_width * t
            })
            .collect()
    }

    /// `m` equispaced points on the circle `|w - u₀| = rho`, rotated by
    /// `offset` radians.
    pub fn circle_points(&self, m: usize, rho: f64, offset: f64) -> Vec<Complex64> {
        (0..m)
            .map(|j| {
                let theta = 2.0 * PI * j as f64 / m as f64 + offset;
                self.center + Complex64::from_polar(rho, theta)
            })
            .collect()
    }

    /// Boundary circle plus the nodes of an `n × n` square lattice that fall
    /// inside the closed disc.
    pub fn closed_disc_samples(&self, boundary: usize, n: usize) -> Vec<Complex64> {
        let mut pts = self.circle_points(boundary, self.radius, 0.0);
        let n = n.max(2);
        for j in 0..n {
            for i in 0..n {
                let x = -self.radius + 2.0 * self.radius * i as f64 / (n - 1) as f64;
                let y = -self.radius + 2.0 * self.radius * j as f64 / (n - 1) as f64;
                let t = Complex64::new(x, y);
                if t.norm() < self.radius {
                    pts.push(self.center + t);
                }
            }
        }
        pts
    }
}

impl<'de> Deserialize<'de> for DiscDomain {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            center: f64,
            radius: f64,
            half_width: f64,
        }
        let raw = Raw::deserialize(d)?;
        DiscDomain::new(raw.center, raw.radius, raw.half_width).map_err(serde::de::Error::custom)
    }
}
