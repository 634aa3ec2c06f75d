use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use bjorling_core::{DiscDomain, MetricTag, Tolerances};
use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const DEFAULT_DEGREE: usize = 48;
pub const DEFAULT_GRID: (usize, usize) = (64, 64);
pub const DEFAULT_V_HALF_RANGE: f64 = 0.5;
pub const MIN_DEGREE: usize = 8;
/// Disc used for builtin curves when nothing else fixes the domain.
pub const DEFAULT_DOMAIN: (f64, f64, f64) = (0.0, 1.0, 0.8);

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Solve the Björling problem for a curve and normal.
    Bjorling,
    /// Interpolate a second curve from a base curve.
    Interpolate,
    /// Certify a stored isotropic curve.
    Verify,
    /// Solve and certify the builtin catalogue.
    Gallery,
    /// Write the mesh of a stored isotropic curve.
    Export,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Bjorling => "bjorling",
            Command::Interpolate => "interpolate",
            Command::Verify => "verify",
            Command::Gallery => "gallery",
            Command::Export => "export",
        }
    }
}

/// Björling surfaces and curve interpolation for minimal and maximal surfaces.
#[derive(Debug, Parser)]
#[command(name = "bjorling", version)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// euclidean or lorentz.
    #[arg(long)]
    pub metric: Option<MetricTag>,
    /// Truncation degree of the series.
    #[arg(long)]
    pub degree: Option<usize>,
    /// Patch grid, NUxNV.
    #[arg(long, value_parser = parse_grid)]
    pub grid: Option<(usize, usize)>,
    /// Half-width of the v range of the sampled patch.
    #[arg(long = "v-range", allow_negative_numbers = true)]
    pub v_range: Option<f64>,
    /// Tolerance override, NAME=VALUE; repeatable.
    #[arg(long = "tol", value_name = "NAME=VALUE", value_parser = parse_tol)]
    pub tol: Vec<(String, f64)>,
    /// Run the chord-Newton solve after the isotropic extension.
    #[arg(long)]
    pub newton: bool,
    /// Iteration cap of the Newton solve (default 20).
    #[arg(long = "max-iter")]
    pub max_iter: Option<usize>,
    /// Curve: builtin expression, preset name or JSON file.
    #[arg(long)]
    pub input: Option<String>,
    /// Target curve of `interpolate`.
    #[arg(long)]
    pub target: Option<String>,
    /// Normal field along the input curve.
    #[arg(long)]
    pub normal: Option<String>,
    /// OBJ output; a CSV sidecar with H and the immersion margin is written
    /// next to it.
    #[arg(long)]
    pub mesh: Option<PathBuf>,
    /// Write the JSON report here instead of standard output.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Output directory of `gallery`.
    #[arg(long = "out-dir")]
    pub out_dir: Option<PathBuf>,
    /// Write the isotropic curve as JSON.
    #[arg(long = "save-curve")]
    pub save_curve: Option<PathBuf>,
    /// TOML file with defaults for any of the options above.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Disc center u0; with --radius and --half-width it overrides the
    /// domain of builtin curves.
    #[arg(long, allow_negative_numbers = true)]
    pub center: Option<f64>,
    /// Disc radius R.
    #[arg(long, allow_negative_numbers = true)]
    pub radius: Option<f64>,
    /// Half-width of the real interval I, less than R.
    #[arg(long = "half-width", allow_negative_numbers = true)]
    pub half_width: Option<f64>,
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected NUxNV, got '{s}'"))?;
    let nu = a
        .trim()
        .parse::<usize>()
        .map_err(|e| format!("bad NU '{a}': {e}"))?;
    let nv = b
        .trim()
        .parse::<usize>()
        .map_err(|e| format!("bad NV '{b}': {e}"))?;
    Ok((nu, nv))
}

fn parse_tol(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=VALUE, got '{s}'"))?;
    let value = value
        .trim()
        .parse::<f64>()
        .map_err(|e| format!("bad value for '{name}': {e}"))?;
    Ok((name.trim().to_string(), value))
}

/// Contents of `--config`; every field optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub metric: Option<String>,
    pub degree: Option<usize>,
    pub grid: Option<String>,
    pub v_range: Option<f64>,
    pub newton: Option<bool>,
    pub max_iter: Option<usize>,
    pub input: Option<String>,
    pub target: Option<String>,
    pub normal: Option<String>,
    pub mesh: Option<PathBuf>,
    pub report: Option<PathBuf>,
    pub out_dir: Option<PathBuf>,
    pub save_curve: Option<PathBuf>,
    pub center: Option<f64>,
    pub radius: Option<f64>,
    pub half_width: Option<f64>,
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        toml::from_str(&text).map_err(|e| CliError::parse(format!("config {}", path.display()), e))
    }
}

/// Fully resolved settings of one run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    /// `None` when neither flag nor file chose one.
    pub metric: Option<MetricTag>,
    pub degree: usize,
    pub grid: (usize, usize),
    /// `None` leaves the choice to the input: a preset's own range, else
    /// the default.
    pub v_half_range: Option<f64>,
    /// `(center, radius, half_width)` when given explicitly.
    pub domain: Option<(f64, f64, f64)>,
    pub tolerances: Tolerances,
    pub newton: bool,
    pub max_iter: usize,
    pub input: Option<String>,
    pub target: Option<String>,
    pub normal: Option<String>,
    pub mesh: Option<PathBuf>,
    pub report: Option<PathBuf>,
    pub out_dir: Option<PathBuf>,
    pub save_curve: Option<PathBuf>,
}

impl RunConfig {
    /// Flags override the config file, which overrides the defaults.
    pub fn resolve(cli: Cli) -> CliResult<Self> {
        let file = match &cli.config {
            Some(p) => FileConfig::load(p)?,
            None => FileConfig::default(),
        };
        let metric = match (cli.metric, &file.metric) {
            (Some(m), _) => Some(m),
            (None, Some(s)) => Some(s.parse().map_err(|e| CliError::parse("metric", e))?),
            (None, None) => None,
        };
        let grid = match (cli.grid, &file.grid) {
            (Some(g), _) => g,
            (None, Some(s)) => parse_grid(s).map_err(|e| CliError::parse("grid", e))?,
            (None, None) => DEFAULT_GRID,
        };
        let mut tolerances = Tolerances::default();
        for (name, value) in file
            .tolerances
            .iter()
            .map(|(k, v)| (k.as_str(), *v))
            .chain(cli.tol.iter().map(|(k, v)| (k.as_str(), *v)))
        {
            tolerances
                .set(name, value)
                .map_err(|e| CliError::parse(format!("tol {name}"), e))?;
        }
        let center = cli.center.or(file.center);
        let radius = cli.radius.or(file.radius);
        let half_width = cli.half_width.or(file.half_width);
        let domain = match (center, radius, half_width) {
            (None, None, None) => None,
            (c, r, h) => {
                let (c0, r0, h0) = DEFAULT_DOMAIN;
                Some((c.unwrap_or(c0), r.unwrap_or(r0), h.unwrap_or(h0)))
            }
        };
        let cfg = RunConfig {
            command: cli.command,
            metric,
            degree: cli.degree.or(file.degree).unwrap_or(DEFAULT_DEGREE),
            grid,
            v_half_range: cli.v_range.or(file.v_range),
            domain,
            tolerances,
            newton: cli.newton || file.newton.unwrap_or(false),
            max_iter: cli.max_iter.or(file.max_iter).unwrap_or(20),
            input: cli.input.or(file.input),
            target: cli.target.or(file.target),
            normal: cli.normal.or(file.normal),
            mesh: cli.mesh.or(file.mesh),
            report: cli.report.or(file.report),
            out_dir: cli.out_dir.or(file.out_dir),
            save_curve: cli.save_curve.or(file.save_curve),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> CliResult<()> {
        if self.degree < MIN_DEGREE {
            return Err(CliError::parse(
                "degree",
                format!("must be at least {MIN_DEGREE}, got {}", self.degree),
            ));
        }
        if self.grid.0 < 2 || self.grid.1 < 2 {
            return Err(CliError::parse(
                "grid",
                format!(
                    "dimensions must be at least 2, got {}x{}",
                    self.grid.0, self.grid.1
                ),
            ));
        }
        if let Some(v) = self.v_half_range.filter(|v| !(*v > 0.0 && v.is_finite())) {
            return Err(CliError::parse(
                "v-range",
                format!("must be positive, got {v}"),
            ));
        }
        if let Some((c, r, h)) = self.domain {
            DiscDomain::new(c, r, h).map_err(|e| CliError::parse("domain", e))?;
        }
        Ok(())
    }

    pub fn metric_or_default(&self) -> MetricTag {
        self.metric.unwrap_or(MetricTag::Euclidean)
    }

    pub fn v_half_range_or(&self, fallback: f64) -> f64 {
        self.v_half_range.unwrap_or(fallback)
    }

    pub fn explicit_domain(&self) -> Option<DiscDomain> {
        self.domain
            .map(|(c, r, h)| DiscDomain::new(c, r, h).expect("validated"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("bjorling").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn defaults() {
        let c = RunConfig::resolve(cli(&["gallery"])).unwrap();
        assert_eq!(c.degree, 48);
        assert_eq!(c.grid, (64, 64));
        assert_eq!(c.v_half_range_or(DEFAULT_V_HALF_RANGE), 0.5);
        assert_eq!(c.metric, None);
        assert_eq!(c.tolerances, Tolerances::default());
    }

    #[test]
    fn flags_beat_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        std::fs::write(
            &path,
            "metric = \"lorentz\"\ndegree = 32\ngrid = \"10x12\"\n[tolerances]\ncontainment = 1e-3\nisotropy = 1e-9\n",
        )
        .unwrap();
        let c = RunConfig::resolve(cli(&[
            "bjorling",
            "--config",
            path.to_str().unwrap(),
            "--degree",
            "40",
            "--tol",
            "isotropy=1e-11",
        ]))
        .unwrap();
        assert_eq!(c.metric, Some(MetricTag::Lorentz));
        assert_eq!(c.degree, 40);
        assert_eq!(c.grid, (10, 12));
        assert_eq!(c.tolerances.containment, 1e-3);
        assert_eq!(c.tolerances.isotropy, 1e-11);
    }

    #[test]
    fn rejects_bad_settings() {
        for args in [
            &["bjorling", "--degree", "4"][..],
            &["bjorling", "--grid", "1x5"],
            &["bjorling", "--tol", "isotropy=-1"],
            &["bjorling", "--tol", "bogus=1"],
            &["bjorling", "--radius", "-1"],
        ] {
            let err = RunConfig::resolve(cli(args)).unwrap_err();
            assert_eq!(err.exit_code(), 1, "{args:?}");
        }
        assert!(Cli::try_parse_from(["bjorling", "bjorling", "--grid", "12"]).is_err());
    }

    #[test]
    fn unknown_config_key() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.toml");
        std::fs::write(&path, "degre = 3\n").unwrap();
        let err =
            RunConfig::resolve(cli(&["gallery", "--config", path.to_str().unwrap()])).unwrap_err();
        assert_eq!(err.kind(), "ParseError");
        let missing =
            RunConfig::resolve(cli(&["gallery", "--config", "/nonexistent/x.toml"])).unwrap_err();
        assert_eq!(missing.exit_code(), 3);
    }
}
