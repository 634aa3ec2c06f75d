//! The five commands.

use std::collections::BTreeMap;
use std::path::Path;

use bjorling_core::analytic::SUP_NORM_SAMPLES;
use bjorling_core::bjorling::{
    boundary_residuals, certify_patch, conjugate_curve, default_normal, eta_budget, sample_patch,
    solve, Preset, MARGIN_GRID, RESIDUAL_GRID, VALIDATION_SAMPLES,
};
use bjorling_core::interpolate::{
    chord_newton, closeness_report, containment_report, isotropic_extension_with,
    InterpolationProblem, NewtonOptions, PivotStrategy,
};
use bjorling_core::{
    AnalyticMap, BjorlingData, Complex64, DiscDomain, Error, IsotropicCurve, MetricTag,
    SurfacePatch,
};
use serde_json::json;

use crate::config::{Command, RunConfig, DEFAULT_DOMAIN, DEFAULT_V_HALF_RANGE};
use crate::curve::{load_curve, load_vector, source_domain, CurveSource, Role};
use crate::error::{CliError, CliResult, EXIT_NUMERIC, EXIT_OK};
use crate::mesh::export_mesh;
use crate::report::{Check, Report, Section};

/// Boundary samples for the Björling conditions.
pub const BOUNDARY_SAMPLES: usize = 200;
/// Interval samples projected onto `Re C` by the containment check.
pub const CONTAINMENT_SAMPLES: usize = 101;

/// What a run produced: a report (absent for `export`) and the exit code
/// it implies.
#[derive(Debug)]
pub struct Outcome {
    pub report: Option<Report>,
    pub exit_code: i32,
}

/// Runs the command and writes every requested artifact. The report goes
/// to `--report` when given and is otherwise left to the caller.
pub fn execute(cfg: &RunConfig) -> CliResult<Outcome> {
    let report = match cfg.command {
        Command::Bjorling => Some(bjorling(cfg)?),
        Command::Interpolate => Some(interpolate(cfg)?),
        Command::Verify => Some(verify(cfg)?),
        Command::Gallery => Some(gallery(cfg)?),
        Command::Export => {
            export(cfg)?;
            None
        }
    };
    if let (Some(r), Some(path)) = (&report, &cfg.report) {
        std::fs::write(path, r.to_json()).map_err(|e| CliError::io(path, e))?;
    }
    let exit_code = match &report {
        Some(r) if !r.all_pass => EXIT_NUMERIC,
        _ => EXIT_OK,
    };
    Ok(Outcome { report, exit_code })
}

fn required<'a>(value: &'a Option<String>, field: &str) -> CliResult<&'a str> {
    value
        .as_deref()
        .ok_or_else(|| CliError::parse(field, format!("--{field} is required for this command")))
}

/// Explicit flags, then the first source that carries a domain, then the
/// default disc.
fn resolve_domain(cfg: &RunConfig, sources: &[&CurveSource]) -> CliResult<DiscDomain> {
    if let Some(d) = cfg.explicit_domain() {
        return Ok(d);
    }
    for s in sources {
        if let Some(d) = source_domain(s)? {
            return Ok(d);
        }
    }
    let (c, r, h) = DEFAULT_DOMAIN;
    Ok(DiscDomain::new(c, r, h)?)
}

/// A preset fixes the metric; an explicit conflicting metric is an error.
fn resolve_metric(cfg: &RunConfig, src: &CurveSource) -> CliResult<MetricTag> {
    match (src, cfg.metric) {
        (CurveSource::Preset(p), Some(m)) if m != p.metric() => Err(CliError::parse(
            "metric",
            format!("preset {} is {}, not {m}", p.name(), p.metric()),
        )),
        (CurveSource::Preset(p), _) => Ok(p.metric()),
        _ => Ok(cfg.metric_or_default()),
    }
}

/// A preset brings its own `v` range; explicit settings still win.
fn v_half_range(cfg: &RunConfig, src: &CurveSource) -> f64 {
    match src {
        CurveSource::Preset(p) => cfg.v_half_range_or(p.v_half_range()),
        _ => cfg.v_half_range_or(DEFAULT_V_HALF_RANGE),
    }
}

fn check_patch_fits(d: DiscDomain, v: f64) -> CliResult<()> {
    let reach = d.half_width().hypot(v);
    if reach > d.radius() {
        return Err(Error::InvalidArgument(format!(
            "patch corner at distance {reach} leaves the disc of radius {}",
            d.radius()
        ))
        .into());
    }
    Ok(())
}

/// Björling data from `--input` and `--normal`.
fn bjorling_data(cfg: &RunConfig) -> CliResult<(BjorlingData, CurveSource)> {
    let tol = &cfg.tolerances;
    let src = CurveSource::parse(required(&cfg.input, "input")?)?;
    let normal = cfg.normal.as_deref().map(CurveSource::parse).transpose()?;
    let metric = resolve_metric(cfg, &src)?;
    let mut sources = vec![&src];
    sources.extend(normal.as_ref());
    let domain = resolve_domain(cfg, &sources)?;
    let a = load_curve(&src, domain, cfg.degree, metric, Role::Curve, tol)?;
    let n = match (&normal, &src) {
        (Some(n), _) => load_curve(n, domain, cfg.degree, metric, Role::Normal, tol)?,
        (None, CurveSource::Preset(_)) => {
            load_curve(&src, domain, cfg.degree, metric, Role::Normal, tol)?
        }
        (None, _) => default_normal(&a, metric)?,
    };
    let data = BjorlingData::new(a, n, metric)?;
    data.ensure_valid()?;
    Ok((data, src))
}

/// Samples and certifies `Re f` over `I × [v_lo, v_hi]`.
fn surface_section(
    name: &str,
    curve: &IsotropicCurve,
    v_range: (f64, f64),
    cfg: &RunConfig,
) -> CliResult<(Section, SurfacePatch)> {
    let d = curve.domain();
    check_patch_fits(d, v_range.0.abs().max(v_range.1.abs()))?;
    let patch = sample_patch(curve, d.interval(), v_range, cfg.grid.0, cfg.grid.1)?;
    let cert = certify_patch(curve, &patch);
    let mut s = Section::new(name);
    s.certificate(&cert, &cfg.tolerances);
    s.result("metric", curve.metric());
    s.result(
        "domain",
        json!({"center": d.center(), "radius": d.radius(), "interval_half_width": d.half_width()}),
    );
    s.result("degree", curve.f().degree());
    s.result("u_range", d.interval());
    s.result("v_range", v_range);
    s.result("tail", curve.f().tail_estimate());
    match eta_budget(curve) {
        Ok(b) => s.result("eta_budget", b),
        Err(e) => s.result(
            "eta_budget",
            json!({"error": e.kind(), "message": e.to_string()}),
        ),
    }
    Ok((s, patch))
}

fn boundary_checks(
    s: &mut Section,
    curve: &IsotropicCurve,
    data: &BjorlingData,
    cfg: &RunConfig,
) -> CliResult<()> {
    let (pos, normal) = boundary_residuals(curve, data, BOUNDARY_SAMPLES)?;
    s.check(Check::less(
        "boundary_position",
        pos,
        cfg.tolerances.boundary,
    ));
    s.check(Check::less(
        "boundary_normal",
        normal,
        cfg.tolerances.boundary_normal,
    ));
    Ok(())
}

fn samples(cfg: &RunConfig, extra: &[(&'static str, usize)]) -> BTreeMap<&'static str, usize> {
    let mut m = BTreeMap::from([
        ("patch_nodes", cfg.grid.0 * cfg.grid.1),
        ("validation", VALIDATION_SAMPLES),
        ("sup_norm_boundary", SUP_NORM_SAMPLES),
        ("isotropy_lattice", RESIDUAL_GRID),
        ("margin_lattice", MARGIN_GRID),
    ]);
    m.extend(extra.iter().copied());
    m
}

fn save_curve(cfg: &RunConfig, curve: &IsotropicCurve) -> CliResult<()> {
    if let Some(path) = &cfg.save_curve {
        let json = AnalyticMap::from(curve.f().clone()).to_json();
        std::fs::write(path, json).map_err(|e| CliError::io(path, e))?;
    }
    Ok(())
}

fn write_mesh(cfg: &RunConfig, patch: &SurfacePatch) -> CliResult<()> {
    match &cfg.mesh {
        Some(path) => export_mesh(patch, path),
        None => Ok(()),
    }
}

fn bjorling(cfg: &RunConfig) -> CliResult<Report> {
    let (data, src) = bjorling_data(cfg)?;
    let curve = solve(&data)?;
    let v = v_half_range(cfg, &src);
    let name = match &src {
        CurveSource::Preset(p) => p.name(),
        _ => "bjorling".to_string(),
    };
    let (mut s, patch) = surface_section(&name, &curve, (-v, v), cfg)?;
    boundary_checks(&mut s, &curve, &data, cfg)?;
    write_mesh(cfg, &patch)?;
    save_curve(cfg, &curve)?;
    Ok(Report::new(
        cfg,
        vec![s],
        samples(cfg, &[("boundary", BOUNDARY_SAMPLES)]),
    ))
}

fn interpolate(cfg: &RunConfig) -> CliResult<Report> {
    let tol = &cfg.tolerances;
    let (data, src) = bjorling_data(cfg)?;
    let metric = data.metric();
    let domain = data.domain();
    let target = CurveSource::parse(required(&cfg.target, "target")?)?;
    let l = load_curve(&target, domain, cfg.degree, metric, Role::Curve, tol)?;
    let a = data.a().clone();

    let base = solve(&data)?;
    let d0 = conjugate_curve(&data)?;
    let budget = eta_budget(&base)?;
    let problem = InterpolationProblem::new_with(a.clone(), l, metric, tol)?;
    let ext = isotropic_extension_with(&problem, tol)?;

    let v = v_half_range(cfg, &src);
    let (mut s, patch) = surface_section("interpolant", &ext.c, (-v, v), cfg)?;
    s.check(Check::less(
        "extension_orthogonality",
        ext.orthogonality_residual,
        tol.validation,
    ));
    s.check(Check::less(
        "extension_norm",
        ext.norm_residual,
        tol.validation,
    ));
    s.check(Check::less(
        "extension_real_part",
        ext.real_part_residual,
        tol.boundary,
    ));

    let close = closeness_report(&problem, &ext.d_l, &d0, &budget)?;
    let ratio = [
        close.norm_l_a / close.eta1,
        close.norm_l_a_prime / close.eta1,
        close.norm_d_d0 / close.eta2,
        close.norm_d_d0_prime / close.eta2,
    ]
    .into_iter()
    .fold(0.0, f64::max);
    s.check(Check::less("closeness_ratio", ratio, 1.0));
    s.result("closeness", &close);
    s.result("base_eta_budget", budget);

    match containment_report(&ext.c, &a, CONTAINMENT_SAMPLES, tol.containment) {
        Ok(r) => {
            s.check(Check::less(
                "containment_max_residual",
                r.max_residual,
                tol.containment,
            ));
            s.result(
                "containment",
                json!({"max_residual": r.max_residual, "stalled": r.stalled.len(), "samples": r.samples.len()}),
            );
        }
        Err(e) => {
            s.check(Check::failed("containment_max_residual"));
            s.result(
                "containment",
                json!({"error": e.kind(), "message": e.to_string()}),
            );
        }
    }

    if cfg.newton {
        let opts = NewtonOptions {
            max_iter: cfg.max_iter,
            tol: tol.newton,
            pivot: PivotStrategy::Largest,
            tolerances: tol.clone(),
        };
        match chord_newton(ext.c.f(), &a, &d0, metric, &opts) {
            Ok(st) => {
                let last = *st.residual_history.last().expect("at least one residual");
                s.check(Check::less("newton_residual", last, tol.newton));
                s.check(Check::less(
                    "newton_boundary",
                    st.boundary_residual,
                    tol.newton,
                ));
                s.check(Check::less("newton_d_imag", st.d_imag_max, tol.newton));
                s.result(
                    "newton",
                    json!({
                        "iterations": st.iterations,
                        "residual_history": st.residual_history,
                        "trace_residual": st.trace_residual,
                        "gamma_center": st.gamma.eval_unchecked(Complex64::new(domain.center(), 0.0)).re,
                    }),
                );
            }
            Err(e) => {
                s.check(Check::failed("newton_residual"));
                s.result(
                    "newton",
                    json!({"error": e.kind(), "message": e.to_string()}),
                );
            }
        }
    }

    write_mesh(cfg, &patch)?;
    save_curve(cfg, &ext.c)?;
    let extra = [("containment", CONTAINMENT_SAMPLES)];
    Ok(Report::new(cfg, vec![s], samples(cfg, &extra)))
}

/// An isotropic curve from a JSON file, or a preset solved on the spot.
fn stored_curve(cfg: &RunConfig) -> CliResult<(IsotropicCurve, String, f64)> {
    let src = CurveSource::parse(required(&cfg.input, "input")?)?;
    let v = v_half_range(cfg, &src);
    match &src {
        CurveSource::Preset(p) => {
            let metric = resolve_metric(cfg, &src)?;
            let s = p.build(cfg.degree)?;
            debug_assert_eq!(metric, s.data.metric());
            Ok((solve(&s.data)?, p.name(), v))
        }
        CurveSource::File(path) => {
            let f = load_vector(Path::new(path))?;
            Ok((
                IsotropicCurve::new(f, cfg.metric_or_default()),
                path.clone(),
                v,
            ))
        }
        CurveSource::Builtin(_) => Err(CliError::parse(
            "input",
            "expected an isotropic curve file or a preset name, got a builtin curve",
        )),
    }
}

fn verify(cfg: &RunConfig) -> CliResult<Report> {
    let (curve, name, v) = stored_curve(cfg)?;
    let (s, _) = surface_section(&name, &curve, (-v, v), cfg)?;
    Ok(Report::new(cfg, vec![s], samples(cfg, &[])))
}

fn file_stem(name: &str) -> String {
    name.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '.' {
                c
            } else {
                '-'
            }
        })
        .collect::<String>()
        .trim_matches('-')
        .to_string()
}

/// Each preset is sampled over its own `v` range unless one is set.
fn gallery(cfg: &RunConfig) -> CliResult<Report> {
    if let Some(dir) = &cfg.out_dir {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    let mut sections = Vec::new();
    for preset in Preset::all() {
        if cfg.metric.is_some_and(|m| m != preset.metric()) {
            continue;
        }
        let ps = preset.build(cfg.degree)?;
        let curve = solve(&ps.data)?;
        let v_range = cfg.v_half_range.map_or(ps.v_range, |v| (-v, v));
        let (mut s, patch) = surface_section(&ps.name, &curve, v_range, cfg)?;
        boundary_checks(&mut s, &curve, &ps.data, cfg)?;
        if let Some(dir) = &cfg.out_dir {
            export_mesh(&patch, &dir.join(format!("{}.obj", file_stem(&ps.name))))?;
        }
        sections.push(s);
    }
    Ok(Report::new(
        cfg,
        sections,
        samples(cfg, &[("boundary", BOUNDARY_SAMPLES)]),
    ))
}

fn export(cfg: &RunConfig) -> CliResult<()> {
    let path = cfg
        .mesh
        .as_ref()
        .ok_or_else(|| CliError::parse("mesh", "--mesh is required for export"))?;
    let (curve, _, v) = stored_curve(cfg)?;
    let d = curve.domain();
    check_patch_fits(d, v)?;
    let patch = sample_patch(&curve, d.interval(), (-v, v), cfg.grid.0, cfg.grid.1)?;
    export_mesh(&patch, path)
}
