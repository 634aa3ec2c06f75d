//! Inner and cross products of E³ and L³, extended bilinearly to ℂ³.
//!
//! The Lorentzian cross product follows the convention
//! `<x ×_L y, z>_L = det(x, y, z)`, which in components is the Euclidean
//! cross product with its third component negated.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerance::LIGHTLIKE_TOL;

/// Field-like scalar: `f64` or `Complex64`.
pub trait Scalar:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
}

impl<T> Scalar for T where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>
{
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

pub type Vec3R = Vec3<f64>;
pub type Vec3C = Vec3<Complex64>;

impl<T> Vec3<T> {
    pub const fn new(x: T, y: T, z: T) -> Self {
        Vec3 { x, y, z }
    }

    pub fn map<U>(self, mut f: impl FnMut(T) -> U) -> Vec3<U> {
        Vec3::new(f(self.x), f(self.y), f(self.z))
    }

    pub fn to_array(self) -> [T; 3] {
        [self.x, self.y, self.z]
    }
}

impl<T: Copy> Vec3<T> {
    pub fn from_array(a: [T; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
    }

    pub fn get(&self, i: usize) -> T {
        match i {
            0 => self.x,
            1 => self.y,
            2 => self.z,
            _ => panic!("component index {i} out of range"),
        }
    }
}

impl<T: Scalar> Vec3<T> {
    pub fn scale(self, s: T) -> Self {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }

    /// Euclidean (bilinear) dot product.
    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y + self.z * o.z
    }
}

impl Vec3R {
    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn max_abs(self) -> f64 {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn to_complex(self) -> Vec3C {
        self.map(|c| Complex64::new(c, 0.0))
    }
}

impl Vec3C {
    pub fn re(self) -> Vec3R {
        self.map(|c| c.re)
    }

    pub fn im(self) -> Vec3R {
        self.map(|c| c.im)
    }

    pub fn max_abs(self) -> f64 {
        self.x.norm().max(self.y.norm()).max(self.z.norm())
    }
}

impl<T: Scalar> Add for Vec3<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<T: Scalar> AddAssign for Vec3<T> {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<T: Scalar> Sub for Vec3<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<T: Scalar> Neg for Vec3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl<T: fmt::Display> fmt::Display for Vec3<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Ambient metric of the surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricTag {
    Euclidean,
    Lorentz,
}

impl MetricTag {
    /// Sign of the third coordinate in the inner product.
    pub fn third_sign(self) -> f64 {
        match self {
            MetricTag::Euclidean => 1.0,
            MetricTag::Lorentz => -1.0,
        }
    }

    /// Sign σ in the isotropic curve `f = a + iσ d`: `+1` for maximal
    /// surfaces, `-1` for minimal surfaces.
    pub fn isotropic_sign(self) -> f64 {
        match self {
            MetricTag::Euclidean => -1.0,
            MetricTag::Lorentz => 1.0,
        }
    }

    /// Value of `<n, n>` required of a unit surface normal.
    pub fn unit_normal_norm(self) -> f64 {
        match self {
            MetricTag::Euclidean => 1.0,
            MetricTag::Lorentz => -1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MetricTag::Euclidean => "euclidean",
            MetricTag::Lorentz => "lorentz",
        }
    }
}

impl fmt::Display for MetricTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for MetricTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "euclidean" | "e" => Ok(MetricTag::Euclidean),
            "lorentz" | "l" | "minkowski" => Ok(MetricTag::Lorentz),
            other => Err(Error::InvalidArgument(format!("unknown metric '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CausalCharacter {
    Spacelike,
    Timelike,
    Lightlike,
}

/// Bilinear inner product; never conjugates.
pub fn inner<T: Scalar>(metric: MetricTag, x: Vec3<T>, y: Vec3<T>) -> T {
    match metric {
        MetricTag::Euclidean => x.x * y.x + x.y * y.y + x.z * y.z,
        MetricTag::Lorentz => x.x * y.x + x.y * y.y - x.z * y.z,
    }
}

pub fn cross<T: Scalar>(metric: MetricTag, x: Vec3<T>, y: Vec3<T>) -> Vec3<T> {
    let c = Vec3::new(
        x.y * y.z - x.z * y.y,
        x.z * y.x - x.x * y.z,
        x.x * y.y - x.y * y.x,
    );
    match metric {
        MetricTag::Euclidean => c,
        MetricTag::Lorentz => Vec3::new(c.x, c.y, -c.z),
    }
}

pub fn causal_character(v: Vec3R, tol: f64) -> CausalCharacter {
    let q = inner(MetricTag::Lorentz, v, v);
    if q > tol {
        CausalCharacter::Spacelike
    } else if q < -tol {
        CausalCharacter::Timelike
    } else {
        CausalCharacter::Lightlike
    }
}

/// `√|<v, v>_L|`, the Lorentzian magnitude regardless of causal character.
pub fn lorentz_magnitude(v: Vec3R) -> f64 {
    inner(MetricTag::Lorentz, v, v).abs().sqrt()
}

/// Rescales a timelike vector to `<w, w>_L = -1`, keeping its direction.
pub fn normalize_timelike(v: Vec3R) -> Result<Vec3R> {
    normalize_timelike_with(v, LIGHTLIKE_TOL)
}

pub fn normalize_timelike_with(v: Vec3R, tol: f64) -> Result<Vec3R> {
    let q = inner(MetricTag::Lorentz, v, v);
    if q >= -tol {
        return Err(Error::NotTimelike { norm_sq: q });
    }
    Ok(v.scale(1.0 / (-q).sqrt()))
}
