//! Wavefront OBJ export with a CSV sidecar for per-vertex scalars.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use bjorling_core::{SurfacePatch, Vec3R};

use crate::error::{CliError, CliResult};

/// Fixed-point with 9 decimals; `-0` is printed as `0`.
fn fixed(x: f64) -> String {
    let s = format!("{x:.9}");
    if s.bytes().skip(1).all(|b| b == b'0' || b == b'.') && s.starts_with('-') {
        s[1..].to_string()
    } else {
        s
    }
}

fn sci(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.9e}")
}

/// OBJ text: one `v` line per node in row-major order (u fastest), one
/// `f` quad per grid cell, 1-based.
pub fn obj_string(patch: &SurfacePatch) -> String {
    let mut out = String::with_capacity(patch.len() * 48);
    let _ = writeln!(
        out,
        "# bjorling {} surface, {}x{} grid",
        patch.metric, patch.nu, patch.nv
    );
    for p in &patch.positions {
        let _ = writeln!(out, "v {} {} {}", fixed(p.x), fixed(p.y), fixed(p.z));
    }
    for q in patch.quads() {
        let _ = writeln!(out, "f {} {} {} {}", q[0] + 1, q[1] + 1, q[2] + 1, q[3] + 1);
    }
    out
}

/// `vertex_index,H,margin` with the OBJ's 1-based vertex numbering.
pub fn csv_string(patch: &SurfacePatch) -> String {
    let mut out = String::from("vertex_index,H,margin\n");
    for (k, (h, m)) in patch.mean_curvature.iter().zip(&patch.margin).enumerate() {
        let _ = writeln!(out, "{},{},{}", k + 1, sci(*h), sci(*m));
    }
    out
}

pub fn sidecar_path(obj: &Path) -> PathBuf {
    obj.with_extension("csv")
}

/// Writes `path` and its `.csv` sidecar.
pub fn export_mesh(patch: &SurfacePatch, path: &Path) -> CliResult<()> {
    if patch.is_empty() {
        return Err(CliError::parse("mesh", "patch is empty"));
    }
    std::fs::write(path, obj_string(patch)).map_err(|e| CliError::io(path, e))?;
    let csv = sidecar_path(path);
    std::fs::write(&csv, csv_string(patch)).map_err(|e| CliError::io(&csv, e))
}

/// Vertices and faces of an OBJ file (faces converted to 0-based).
#[derive(Clone, Debug, PartialEq)]
pub struct ObjMesh {
    pub vertices: Vec<Vec3R>,
    pub faces: Vec<Vec<usize>>,
}

pub fn parse_obj(text: &str) -> Result<ObjMesh, String> {
    let mut mesh = ObjMesh {
        vertices: Vec::new(),
        faces: Vec::new(),
    };
    for (n, line) in text.lines().enumerate() {
        let mut it = line.split_whitespace();
        match it.next() {
            Some("v") => {
                let xs = it
                    .map(|t| t.parse::<f64>().map_err(|e| format!("line {}: {e}", n + 1)))
                    .collect::<Result<Vec<_>, _>>()?;
                if xs.len() != 3 {
                    return Err(format!("line {}: expected 3 coordinates", n + 1));
                }
                mesh.vertices.push(Vec3R::new(xs[0], xs[1], xs[2]));
            }
            Some("f") => {
                let idx = it
                    .map(|t| {
                        let head = t.split('/').next().unwrap_or(t);
                        match head.parse::<usize>() {
                            Ok(i) if i >= 1 => Ok(i - 1),
                            _ => Err(format!("line {}: bad face index '{t}'", n + 1)),
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                mesh.faces.push(idx);
            }
            _ => {}
        }
    }
    if let Some(bad) = mesh
        .faces
        .iter()
        .flatten()
        .find(|&&i| i >= mesh.vertices.len())
    {
        return Err(format!("face index {} out of range", bad + 1));
    }
    Ok(mesh)
}

pub fn read_obj(path: &Path) -> CliResult<ObjMesh> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_obj(&text).map_err(|m| CliError::parse(path.display().to_string(), m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use bjorling_core::bjorling::{sample_patch, solve, Preset};

    fn patch(nu: usize, nv: usize) -> SurfacePatch {
        let s = Preset::Catenoid.build(48).unwrap();
        let c = solve(&s.data).unwrap();
        sample_patch(&c, s.u_range, (-0.5, 0.5), nu, nv).unwrap()
    }

    #[test]
    fn smallest_grid() {
        let text = obj_string(&patch(2, 2));
        assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 4);
        assert_eq!(
            text.lines()
                .filter(|l| l.starts_with("f "))
                .collect::<Vec<_>>(),
            ["f 1 2 4 3"]
        );
        assert!(!text.contains('\r'));
    }

    #[test]
    fn catenoid_counts_and_round_trip() {
        let p = patch(50, 50);
        let mesh = parse_obj(&obj_string(&p)).unwrap();
        assert_eq!(mesh.vertices.len(), 2500);
        assert_eq!(mesh.faces.len(), 2401);
        for (a, b) in mesh.vertices.iter().zip(&p.positions) {
            assert!((*a - *b).max_abs() <= 5e-10 + 1e-15);
        }
        let csv = csv_string(&p);
        assert_eq!(csv.lines().count(), 2501);
        assert_eq!(csv.lines().next(), Some("vertex_index,H,margin"));
    }

    #[test]
    fn negative_zero_is_normalised() {
        assert_eq!(fixed(-0.0), "0.000000000");
        assert_eq!(fixed(-1e-12), "0.000000000");
        assert_eq!(fixed(-0.5), "-0.500000000");
        assert_eq!(sci(-0.0), "0.000000000e0");
    }

    #[test]
    fn bad_obj() {
        assert!(parse_obj("v 1 2\n").is_err());
        assert!(parse_obj("v 0 0 0\nf 1 2 3\n").is_err());
        assert!(parse_obj("v 0 0 0\nf 0\n").is_err());
    }
}
