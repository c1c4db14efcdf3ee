//! Contour grids and trajectories as CSV or standalone SVG, and atomic file
//! writes.

use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use qdt_core::{
    conditional_classical, sample_trajectory, trajectory, Choice, Experiment, Grid, Line, Phases,
    Region,
};

use crate::error::{CliError, Result};
use crate::render::sig12;

pub const CONTOUR_HEADER: &str = "theta0,theta1,value,region";

/// Points per overlay polyline.
const OVERLAY_SAMPLES: usize = 200;

pub fn contour_csv(grid: &Grid) -> String {
    let mut out = String::with_capacity(grid.values.len() * 48);
    out.push_str(CONTOUR_HEADER);
    out.push('\n');
    for (i0, &t0) in grid.thetas.iter().enumerate() {
        for (i1, &t1) in grid.thetas.iter().enumerate() {
            let value = grid.value(i0, i1).map(sig12).unwrap_or_default();
            writeln!(
                out,
                "{},{},{},{}",
                sig12(t0),
                sig12(t1),
                value,
                grid.region(i0, i1)
            )
            .unwrap();
        }
    }
    out
}

pub fn trajectory_csv(points: &[Phases], exp: &Experiment) -> String {
    let mut out = String::from("theta0,theta1,cos_theta0,cos_theta1,value\n");
    for p in points {
        let (c0, c1) = p.cosines();
        let value = qdt_core::conditional_quantum(exp, p, Choice::Zero)
            .map(sig12)
            .unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{}",
            sig12(p.theta0),
            sig12(p.theta1),
            sig12(c0),
            sig12(c1),
            value
        )
        .unwrap();
    }
    out
}

/// A level curve drawn over the heatmap: its four mirror copies in
/// `[0, 2π]²`, each as a polyline of `(θ₀, θ₁)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Overlay {
    pub class: &'static str,
    pub copies: Vec<Vec<(f64, f64)>>,
}

fn mirrored(line: &Line) -> Vec<Vec<(f64, f64)>> {
    let Ok(points) = sample_trajectory(line, OVERLAY_SAMPLES) else {
        return Vec::new();
    };
    if points.is_empty() {
        return Vec::new();
    }
    let flips = [(false, false), (true, false), (false, true), (true, true)];
    flips
        .iter()
        .map(|&(f0, f1)| {
            points
                .iter()
                .map(|p| {
                    let t0 = if f0 { TAU - p.theta0 } else { p.theta0 };
                    let t1 = if f1 { TAU - p.theta1 } else { p.theta1 };
                    (t0, t1)
                })
                .collect()
        })
        .collect()
}

/// Classical-prediction level curve and, when observed, the experimental
/// trajectory.
pub fn overlays(exp: &Experiment) -> Vec<Overlay> {
    let mut out = Vec::new();
    if let Ok(cl) = conditional_classical(exp, Choice::Zero) {
        if let Ok(line) = trajectory(exp, Some(cl)) {
            out.push(Overlay {
                class: "curve-classical",
                copies: mirrored(&line),
            });
        }
    }
    if exp.observed_pk.is_some() {
        if let Ok(line) = trajectory(exp, None) {
            out.push(Overlay {
                class: "curve-observed",
                copies: mirrored(&line),
            });
        }
    }
    out.retain(|o| !o.copies.is_empty());
    out
}

fn fill(region: Region) -> &'static str {
    match region {
        Region::Below => "#f4b3c2",
        Region::Classical => "#ffffff",
        Region::Above => "#9ee0e6",
        Region::Singular => "#808080",
    }
}

const PLOT: f64 = 480.0;
const LEFT: f64 = 56.0;
const TOP: f64 = 40.0;
const WIDTH: f64 = LEFT + PLOT + 24.0;
const HEIGHT: f64 = TOP + PLOT + 48.0;

fn x_of(theta0: f64) -> f64 {
    LEFT + theta0 / TAU * PLOT
}

fn y_of(theta1: f64) -> f64 {
    TOP + PLOT - theta1 / TAU * PLOT
}

/// Heatmap of the grid regions with the level curves on top. Horizontal runs
/// of equal region are merged into one rectangle.
pub fn contour_svg(exp: &Experiment, grid: &Grid) -> String {
    let n = grid.resolution;
    let cell = PLOT / n as f64;
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    )
    .unwrap();
    let observed = exp
        .observed_pk
        .map(|v| format!(", P_obs={v}"))
        .unwrap_or_default();
    writeln!(
        out,
        r#"<text x="{LEFT}" y="24">{}: p0={}, p1={}, q0={}{observed}</text>"#,
        escape(&exp.label),
        exp.p0,
        exp.p1,
        exp.q0
    )
    .unwrap();
    writeln!(out, r#"<g shape-rendering="crispEdges">"#).unwrap();
    for i1 in 0..n {
        let y = TOP + (n - 1 - i1) as f64 * cell;
        let mut start = 0;
        while start < n {
            let region = grid.region(start, i1);
            let mut end = start + 1;
            while end < n && grid.region(end, i1) == region {
                end += 1;
            }
            writeln!(
                out,
                r#"<rect class="region-{}" x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="{}"/>"#,
                region,
                LEFT + start as f64 * cell,
                y,
                (end - start) as f64 * cell,
                cell,
                fill(region)
            )
            .unwrap();
            start = end;
        }
    }
    writeln!(out, "</g>").unwrap();

    for overlay in overlays(exp) {
        let (stroke, width, dash) = match overlay.class {
            "curve-observed" => ("#000000", 2.0, ""),
            _ => ("#555555", 1.0, r#" stroke-dasharray="4 3""#),
        };
        for copy in &overlay.copies {
            let points: Vec<String> = copy
                .iter()
                .map(|&(t0, t1)| format!("{:.3},{:.3}", x_of(t0), y_of(t1)))
                .collect();
            writeln!(
                out,
                r#"<polyline class="{}" points="{}" fill="none" stroke="{stroke}" stroke-width="{width}"{dash}/>"#,
                overlay.class,
                points.join(" ")
            )
            .unwrap();
        }
    }

    writeln!(
        out,
        r##"<rect x="{LEFT}" y="{TOP}" width="{PLOT}" height="{PLOT}" fill="none" stroke="#000000"/>"##
    )
    .unwrap();
    for (theta, label) in [(0.0, "0"), (TAU / 2.0, "π"), (TAU, "2π")] {
        let (x, y) = (x_of(theta), y_of(theta));
        writeln!(
            out,
            r#"<text x="{x:.3}" y="{:.3}" text-anchor="middle">{label}</text>"#,
            TOP + PLOT + 16.0
        )
        .unwrap();
        writeln!(
            out,
            r#"<text x="{:.3}" y="{:.3}" text-anchor="end">{label}</text>"#,
            LEFT - 6.0,
            y + 4.0
        )
        .unwrap();
    }
    writeln!(
        out,
        r#"<text x="{:.3}" y="{:.3}" text-anchor="middle">θ₀</text>"#,
        LEFT + PLOT / 2.0,
        TOP + PLOT + 36.0
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="16" y="{:.3}" text-anchor="middle">θ₁</text>"#,
        TOP + PLOT / 2.0
    )
    .unwrap();
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Writes to a temporary file next to `path` and renames it into place.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
    tmp.write_all(contents.as_bytes())
        .map_err(|e| CliError::io(path, e))?;
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        let perms = std::fs::Permissions::from_mode(0o644);
        tmp.as_file()
            .set_permissions(perms)
            .map_err(|e| CliError::io(path, e))?;
    }
    tmp.as_file()
        .sync_all()
        .map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}
