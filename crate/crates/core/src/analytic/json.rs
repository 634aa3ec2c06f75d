use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{DiscDomain, Series, SeriesVec3};
use crate::error::{Error, Result};

/// On-disk curve format: Taylor coefficients about `center` as `[re, im]`
/// pairs, one list per component.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub center: f64,
    pub radius: f64,
    pub interval_half_width: f64,
    pub components: Vec<Vec<[f64; 2]>>,
}

/// A scalar or 3-component analytic map.
#[derive(Clone, Debug, PartialEq)]
pub enum AnalyticMap {
    Scalar(Series),
    Vector(SeriesVec3),
}

impl AnalyticMap {
    pub fn domain(&self) -> DiscDomain {
        match self {
            AnalyticMap::Scalar(s) => s.domain(),
            AnalyticMap::Vector(v) => v.domain(),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            AnalyticMap::Scalar(s) => s.degree(),
            AnalyticMap::Vector(v) => v.degree(),
        }
    }

    pub fn component_count(&self) -> usize {
        match self {
            AnalyticMap::Scalar(_) => 1,
            AnalyticMap::Vector(_) => 3,
        }
    }

    pub fn into_vector(self) -> Result<SeriesVec3> {
        match self {
            AnalyticMap::Vector(v) => Ok(v),
            AnalyticMap::Scalar(_) => Err(Error::InvalidArgument(
                "expected a 3-component curve, got a scalar map".into(),
            )),
        }
    }

    pub fn into_scalar(self) -> Result<Series> {
        match self {
            AnalyticMap::Scalar(s) => Ok(s),
            AnalyticMap::Vector(_) => Err(Error::InvalidArgument(
                "expected a scalar map, got 3 components".into(),
            )),
        }
    }

    pub fn to_spec(&self) -> CurveSpec {
        let d = self.domain();
        let series: Vec<&Series> = match self {
            AnalyticMap::Scalar(s) => vec![s],
            AnalyticMap::Vector(v) => v.components().iter().collect(),
        };
        CurveSpec {
            center: d.center(),
            radius: d.radius(),
            interval_half_width: d.half_width(),
            components: series
                .iter()
                .map(|s| s.coeffs().iter().map(|c| [c.re, c.im]).collect())
                .collect(),
        }
    }

    pub fn from_spec(spec: &CurveSpec) -> Result<Self> {
        let d = DiscDomain::new(spec.center, spec.radius, spec.interval_half_width)?;
        let mut series = spec
            .components
            .iter()
            .enumerate()
            .map(|(i, cs)| {
                Series::new(
                    d,
                    cs.iter().map(|&[re, im]| Complex64::new(re, im)).collect(),
                )
                .map_err(|e| Error::InvalidArgument(format!("component {i}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        match series.len() {
            1 => Ok(AnalyticMap::Scalar(series.remove(0))),
            3 => {
                let z = series.remove(2);
                let y = series.remove(1);
                let x = series.remove(0);
                Ok(AnalyticMap::Vector(SeriesVec3::new(x, y, z)?))
            }
            n => Err(Error::InvalidArgument(format!(
                "expected 1 or 3 components, got {n}"
            ))),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_spec()).expect("curve spec serializes")
    }
}

impl From<Series> for AnalyticMap {
    fn from(s: Series) -> Self {
        AnalyticMap::Scalar(s)
    }
}

impl From<SeriesVec3> for AnalyticMap {
    fn from(v: SeriesVec3) -> Self {
        AnalyticMap::Vector(v)
    }
}
