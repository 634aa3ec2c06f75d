//! Curve specifications: builtin expressions, preset names and JSON files.

use std::path::Path;

use bjorling_core::analytic::{curves, CurveSpec};
use bjorling_core::bjorling::{Preset, VALIDATION_SAMPLES};
use bjorling_core::metric::inner;
use bjorling_core::{
    AnalyticMap, DiscDomain, Error, MetricTag, SeriesVec3, Tolerances, Vec3R, Violation,
    ViolationKind,
};

use crate::error::{CliError, CliResult};

/// A parsed `name(arg, ...)` expression.
#[derive(Clone, Debug, PartialEq)]
pub enum Builtin {
    Circle { r: f64 },
    Line { dir: Vec3R },
    Helix { r: f64, p: f64 },
    PerturbedCircle { r: f64, eps: f64 },
    TiltedCircle { r: f64, eps: f64, kappa: f64 },
    Const { c: Vec3R },
    BoostedNormal { theta: f64 },
}

pub const BUILTIN_NAMES: [&str; 7] = [
    "circle",
    "line",
    "helix",
    "perturbed-circle",
    "tilted-circle",
    "const",
    "boosted-normal",
];

impl Builtin {
    pub fn build(&self, d: DiscDomain, degree: usize) -> SeriesVec3 {
        match *self {
            Builtin::Circle { r } => curves::circle(d, r, degree),
            Builtin::Line { dir } => curves::line(d, dir, degree),
            Builtin::Helix { r, p } => curves::helix(d, r, p, degree),
            Builtin::PerturbedCircle { r, eps } => curves::perturbed_circle(d, r, eps, degree),
            Builtin::TiltedCircle { r, eps, kappa } => {
                curves::tilted_circle(d, r, eps, kappa, degree)
            }
            Builtin::Const { c } => curves::constant(d, c, degree),
            Builtin::BoostedNormal { theta } => curves::boosted_normal(d, theta, degree),
        }
    }
}

/// Where a curve comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum CurveSource {
    Builtin(Builtin),
    Preset(Preset),
    File(String),
}

impl CurveSource {
    pub fn parse(s: &str) -> CliResult<Self> {
        let s = s.trim();
        let (name, args) = match s.find('(') {
            Some(i) if s.ends_with(')') => (&s[..i], Some(&s[i + 1..s.len() - 1])),
            _ => (s, None),
        };
        let name = name.trim();
        if BUILTIN_NAMES.contains(&name) {
            let args = match args {
                Some(a) if !a.trim().is_empty() => a
                    .split(',')
                    .map(|x| {
                        x.trim().parse::<f64>().map_err(|e| {
                            CliError::parse(
                                format!("curve '{s}'"),
                                format!("argument '{}': {e}", x.trim()),
                            )
                        })
                    })
                    .collect::<CliResult<Vec<f64>>>()?,
                _ => Vec::new(),
            };
            return builtin(name, &args)
                .map(CurveSource::Builtin)
                .map_err(|m| CliError::parse(format!("curve '{s}'"), m));
        }
        if let Ok(p) = s.parse::<Preset>() {
            return Ok(CurveSource::Preset(p));
        }
        Ok(CurveSource::File(s.to_string()))
    }
}

fn builtin(name: &str, a: &[f64]) -> Result<Builtin, String> {
    let want = |n: usize| {
        if a.len() == n {
            Ok(())
        } else {
            Err(format!("{name} takes {n} argument(s), got {}", a.len()))
        }
    };
    if !a.iter().all(|x| x.is_finite()) {
        return Err("arguments must be finite".into());
    }
    Ok(match name {
        "circle" => {
            want(1)?;
            Builtin::Circle { r: a[0] }
        }
        "line" => {
            want(3)?;
            Builtin::Line {
                dir: Vec3R::new(a[0], a[1], a[2]),
            }
        }
        "helix" => {
            want(2)?;
            Builtin::Helix { r: a[0], p: a[1] }
        }
        "perturbed-circle" => {
            want(2)?;
            Builtin::PerturbedCircle { r: a[0], eps: a[1] }
        }
        "tilted-circle" => {
            want(3)?;
            Builtin::TiltedCircle {
                r: a[0],
                eps: a[1],
                kappa: a[2],
            }
        }
        "const" => {
            want(3)?;
            Builtin::Const {
                c: Vec3R::new(a[0], a[1], a[2]),
            }
        }
        "boosted-normal" => {
            want(1)?;
            Builtin::BoostedNormal { theta: a[0] }
        }
        _ => unreachable!("checked against BUILTIN_NAMES"),
    })
}

/// Reads and parses a curve JSON file.
pub fn load_map(path: &Path) -> CliResult<AnalyticMap> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let spec: CurveSpec = serde_json::from_str(&text).map_err(|e| {
        CliError::parse(
            format!("{} line {} column {}", path.display(), e.line(), e.column()),
            e,
        )
    })?;
    Ok(AnalyticMap::from_spec(&spec)?)
}

pub fn load_vector(path: &Path) -> CliResult<SeriesVec3> {
    Ok(load_map(path)?.into_vector()?)
}

/// Domain a source would impose by itself, if any.
pub fn source_domain(src: &CurveSource) -> CliResult<Option<DiscDomain>> {
    Ok(match src {
        CurveSource::Builtin(_) => None,
        CurveSource::Preset(p) => Some(p.domain()),
        CurveSource::File(path) => Some(load_map(Path::new(path))?.domain()),
    })
}

/// Role of a loaded curve, which decides the checks run on load.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    Curve,
    Normal,
}

/// Builds the curve on `domain` and runs the load-time validation.
pub fn load_curve(
    src: &CurveSource,
    domain: DiscDomain,
    degree: usize,
    metric: MetricTag,
    role: Role,
    tol: &Tolerances,
) -> CliResult<SeriesVec3> {
    let curve = match src {
        CurveSource::Builtin(b) => b.build(domain, degree),
        CurveSource::Preset(p) => {
            let s = p.build(degree)?;
            if s.data.domain() != domain {
                return Err(Error::DomainMismatch.into());
            }
            match role {
                Role::Curve => s.data.a().clone(),
                Role::Normal => s.data.n().clone(),
            }
        }
        CurveSource::File(path) => {
            let c = load_vector(Path::new(path))?;
            if c.domain() != domain {
                return Err(Error::DomainMismatch.into());
            }
            if c.degree() < degree {
                c.with_degree(degree)
            } else {
                c
            }
        }
    };
    validate_curve(&curve, metric, role, tol)?;
    Ok(curve)
}

/// Reality on `I`, truncation tail and, for curves, a regular tangent.
pub fn validate_curve(
    curve: &SeriesVec3,
    metric: MetricTag,
    role: Role,
    tol: &Tolerances,
) -> CliResult<()> {
    let u0 = curve.center();
    let mut violations = Vec::new();
    let imag = curve.max_imag_on_interval();
    if !(imag < tol.reality) {
        violations.push(Violation {
            kind: if role == Role::Curve {
                ViolationKind::NotRealCurve
            } else {
                ViolationKind::NotRealNormal
            },
            u: u0,
            magnitude: imag,
            tolerance: tol.reality,
        });
    }
    if role == Role::Curve {
        let dp = curve.derivative();
        let (mut worst, mut at) = (f64::INFINITY, u0);
        for (u, v) in dp.sample_interval(VALIDATION_SAMPLES) {
            let q = inner(metric, v.re(), v.re());
            if q < worst {
                worst = q;
                at = u;
            }
        }
        if !(worst > tol.tangent) {
            violations.push(Violation {
                kind: match metric {
                    MetricTag::Euclidean => ViolationKind::DegenerateTangent,
                    MetricTag::Lorentz => ViolationKind::NotSpacelike,
                },
                u: at,
                magnitude: worst,
                tolerance: tol.tangent,
            });
        }
    }
    if !violations.is_empty() {
        return Err(Error::ValidationFailed(violations).into());
    }
    curve.check_truncation(tol.truncation)?;
    Ok(())
}
