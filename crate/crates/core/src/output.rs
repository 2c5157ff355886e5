//! Artifact rendering and the run orchestrator.
//!
//! Renderers are pure functions returning the file contents; [`run`] computes
//! everything first and then writes the files from a single place, followed
//! by `manifest.json` listing each file with its SHA-256 digest.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::config::{Format, Output, RunConfig};
use crate::critical::{find_critical_with, CriticalError, CriticalReport};
use crate::observables::{run_sweep, SweepError, SweepRecord};
use crate::scattering::{
    local_maxima, rigidity_transmission_correlation, transmission_grid, transmission_profile, ScatteringError,
    TransmissionGrid,
};

/// Floats in CSV files: 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn sweep_header() -> Vec<String> {
    let mut cols = vec!["a".to_string()];
    for c in 1..=2 {
        for k in 1..=2 {
            cols.push(format!("E_{k}_{c}"));
            cols.push(format!("G_{k}_{c}"));
            cols.push(format!("r_{k}_{c}"));
            cols.push(format!("A_{k}_{c}"));
            cols.push(format!("b_{k}1_sq_{c}"));
            cols.push(format!("b_{k}2_sq_{c}"));
        }
        cols.push(format!("ep_flag_{c}"));
    }
    cols
}

/// One row per sweep point; states are listed by branch label.
pub fn render_sweep_csv(records: &[SweepRecord]) -> String {
    let mut out = sweep_header().join(",");
    out.push('\n');
    for rec in records {
        let mut row = vec![fmt_f64(rec.a)];
        for ch in &rec.channels {
            for branch in [1, 2] {
                let (sol, obs) = ch.branch(branch);
                let weights = obs.mixing_weights.unwrap_or([f64::NAN; 2]);
                row.push(fmt_f64(sol.energy()));
                row.push(fmt_f64(sol.width()));
                row.push(fmt_f64(obs.rigidity));
                row.push(fmt_f64(obs.a_norm));
                row.push(fmt_f64(weights[0]));
                row.push(fmt_f64(weights[1]));
            }
            row.push(if ch.ep_flag { "1" } else { "0" }.to_string());
        }
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct JsonState {
    branch: u8,
    energy: f64,
    width: f64,
    vector: [[f64; 2]; 2],
    rigidity: f64,
    a_norm: Option<f64>,
    b_overlap: [f64; 2],
    /// `b_ij` as (re, im)
    mixing: Option<[[f64; 2]; 2]>,
    /// `(b_ij)²` as (re, im)
    mixing_squared: Option<[[f64; 2]; 2]>,
    /// `|b_ij|²`
    mixing_weights: Option<[f64; 2]>,
    source_term: f64,
    c_norm_ok: bool,
}

#[derive(Serialize)]
struct JsonChannel {
    discriminant: [f64; 2],
    ep_flag: bool,
    states: Vec<JsonState>,
}

#[derive(Serialize)]
struct JsonRecord {
    a: f64,
    channels: Vec<JsonChannel>,
}

fn pair(c: crate::eig::C64) -> [f64; 2] {
    [c.re, c.im]
}

/// Full sweep including complex mixing coefficients.
pub fn render_sweep_json(records: &[SweepRecord]) -> String {
    let rows: Vec<JsonRecord> = records
        .iter()
        .map(|rec| JsonRecord {
            a: rec.a,
            channels: rec
                .channels
                .iter()
                .map(|ch| JsonChannel {
                    discriminant: pair(ch.discriminant.value),
                    ep_flag: ch.ep_flag,
                    states: [1u8, 2]
                        .into_iter()
                        .map(|branch| {
                            let (sol, obs) = ch.branch(branch);
                            JsonState {
                                branch,
                                energy: sol.energy(),
                                width: sol.width(),
                                vector: sol.vector.map(pair),
                                rigidity: obs.rigidity,
                                a_norm: obs.a_norm.is_finite().then_some(obs.a_norm),
                                b_overlap: pair(obs.b_overlap),
                                mixing: obs.mixing_row.map(|b| b.map(pair)),
                                mixing_squared: obs.mixing_row.map(|b| b.map(|x| pair(x * x))),
                                mixing_weights: obs.mixing_weights,
                                source_term: obs.source_term,
                                c_norm_ok: sol.c_norm_ok,
                            }
                        })
                        .collect(),
                })
                .collect(),
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&rows).expect("sweep rows serialize");
    s.push('\n');
    s
}

pub fn render_critical_json(report: &CriticalReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("critical report serializes");
    s.push('\n');
    s
}

/// Long format `a,E,T`.
pub fn render_contour_csv(grid: &TransmissionGrid) -> String {
    let mut out = String::from("a,E,T\n");
    for (a, row) in grid.a_grid.iter().zip(&grid.values) {
        for (e, t) in grid.e_grid.iter().zip(row) {
            let _ = writeln!(out, "{},{},{}", fmt_f64(*a), fmt_f64(*e), fmt_f64(*t));
        }
    }
    out
}

/// Transmission profiles at a few fixed `a`, long format `a,E,T`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub a: f64,
    pub e: Vec<f64>,
    pub t: Vec<f64>,
    pub maxima: Vec<(f64, f64)>,
}

pub fn render_spectrum_csv(spectra: &[Spectrum]) -> String {
    let mut out = String::from("a,E,T\n");
    for s in spectra {
        for (e, t) in s.e.iter().zip(&s.t) {
            let _ = writeln!(out, "{},{},{}", fmt_f64(s.a), fmt_f64(*e), fmt_f64(*t));
        }
    }
    out
}

pub fn render_spectrum_json(spectra: &[Spectrum]) -> String {
    let mut s = serde_json::to_string_pretty(spectra).expect("spectra serialize");
    s.push('\n');
    s
}

const DARK: [f64; 3] = [12.0, 7.0, 40.0];
const BRIGHT: [f64; 3] = [252.0, 240.0, 110.0];

/// Linear map from `T = 0` (dark) to `T = 1` (bright).
pub fn heat_color(t: f64) -> String {
    let t = if t.is_finite() { t.clamp(0.0, 1.0) } else { 0.0 };
    let c: Vec<u8> = DARK
        .iter()
        .zip(BRIGHT)
        .map(|(d, b)| (d + (b - d) * t).round() as u8)
        .collect();
    format!("#{:02x}{:02x}{:02x}", c[0], c[1], c[2])
}

fn coord(x: f64) -> String {
    let s = format!("{x:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

/// Heatmap of `T(E, a)` with `a` along x and `E` along y (increasing upward).
///
/// Cells are centred on their grid points; a single point along an axis
/// fills the whole plot in that direction.
pub fn render_svg_heatmap(grid: &TransmissionGrid) -> String {
    const PLOT_W: f64 = 640.0;
    const PLOT_H: f64 = 480.0;
    const LEFT: f64 = 70.0;
    const TOP: f64 = 20.0;
    const BOTTOM: f64 = 50.0;
    const RIGHT: f64 = 20.0;

    let na = grid.a_grid.len();
    let ne = grid.e_grid.len();
    let cell_w = PLOT_W / na as f64;
    let cell_h = PLOT_H / ne as f64;
    let (a_lo, a_hi) = (grid.a_grid[0], grid.a_grid[na - 1]);
    let a_span = if na > 1 { a_hi - a_lo } else { 0.0 };
    let x_of = |a: f64| {
        if na > 1 {
            LEFT + cell_w / 2.0 + (a - a_lo) / a_span * (PLOT_W - cell_w)
        } else {
            LEFT + PLOT_W / 2.0
        }
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        coord(LEFT + PLOT_W + RIGHT),
        coord(TOP + PLOT_H + BOTTOM),
        coord(LEFT + PLOT_W + RIGHT),
        coord(TOP + PLOT_H + BOTTOM)
    );
    out.push_str("<g shape-rendering=\"crispEdges\">\n");
    for (i, row) in grid.values.iter().enumerate() {
        let x = LEFT + i as f64 * cell_w;
        for (j, t) in row.iter().enumerate() {
            // row j = 0 (lowest E) at the bottom
            let y = TOP + PLOT_H - (j + 1) as f64 * cell_h;
            let _ = writeln!(
                out,
                r#"<rect x="{}" y="{}" width="{}" height="{}" fill="{}"/>"#,
                coord(x),
                coord(y),
                coord(cell_w),
                coord(cell_h),
                heat_color(*t)
            );
        }
    }
    out.push_str("</g>\n");
    let _ = writeln!(
        out,
        r##"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="#000"/>"##,
        coord(LEFT),
        coord(TOP),
        coord(PLOT_W),
        coord(PLOT_H)
    );
    if let Some(a_cr) = grid.a_cr_marker {
        let x = coord(x_of(a_cr));
        let _ = writeln!(
            out,
            r##"<line class="a-cr" x1="{x}" y1="{}" x2="{x}" y2="{}" stroke="#ffffff" stroke-dasharray="6 4" stroke-width="1.5"/>"##,
            coord(TOP),
            coord(TOP + PLOT_H)
        );
    }
    let axis_y = TOP + PLOT_H;
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">{}</text>"#,
        coord(LEFT),
        coord(axis_y + 16.0),
        coord(a_lo)
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">{}</text>"#,
        coord(LEFT + PLOT_W),
        coord(axis_y + 16.0),
        coord(a_hi)
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-size="14" text-anchor="middle">a</text>"#,
        coord(LEFT + PLOT_W / 2.0),
        coord(axis_y + 38.0)
    );
    let (e_lo, e_hi) = (grid.e_grid[0], grid.e_grid[ne - 1]);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-size="12" text-anchor="end">{}</text>"#,
        coord(LEFT - 6.0),
        coord(axis_y),
        coord(e_lo)
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-size="12" text-anchor="end">{}</text>"#,
        coord(LEFT - 6.0),
        coord(TOP + 10.0),
        coord(e_hi)
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-size="14" text-anchor="middle" transform="rotate(-90 {} {})">E</text>"#,
        coord(LEFT - 40.0),
        coord(TOP + PLOT_H / 2.0),
        coord(LEFT - 40.0),
        coord(TOP + PLOT_H / 2.0)
    );
    out.push_str("</svg>\n");
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationResult {
    pub pearson: f64,
    pub window: Option<(f64, f64)>,
    pub a_points: usize,
    pub e_points: usize,
}

pub fn render_correlation_json(c: &CorrelationResult) -> String {
    let mut s = serde_json::to_string_pretty(c).expect("correlation serializes");
    s.push('\n');
    s
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("sweep failed: {0}")]
    Sweep(#[from] SweepError),
    #[error("critical point search failed: {0}")]
    Critical(#[from] CriticalError),
    #[error("transmission failed: {0}")]
    Scattering(#[from] ScatteringError),
    #[error("output `{output}` cannot be written as {format}")]
    UnsupportedFormat { output: &'static str, format: Format },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl RunError {
    /// 3 for computation errors, 4 for IO errors, 2 for format mismatches.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Io { .. } => 4,
            RunError::UnsupportedFormat { .. } => 2,
            _ => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArtifactEntry {
    pub file: String,
    pub bytes: usize,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Manifest {
    pub files: Vec<ArtifactEntry>,
}

impl Manifest {
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .fold(String::with_capacity(64), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
}

fn formats_for(output: Output, requested: Option<Format>) -> Result<Vec<Format>, RunError> {
    let (supported, default): (&[Format], &[Format]) = match output {
        Output::Sweep => (&[Format::Csv, Format::Json], &[Format::Csv]),
        Output::Critical => (&[Format::Json], &[Format::Json]),
        Output::Spectrum => (&[Format::Csv, Format::Json], &[Format::Csv]),
        Output::Contour => (&[Format::Csv, Format::Svg], &[Format::Csv, Format::Svg]),
        Output::Correlation => (&[Format::Json], &[Format::Json]),
    };
    match requested {
        None => Ok(default.to_vec()),
        Some(f) if supported.contains(&f) => Ok(vec![f]),
        Some(format) => Err(RunError::UnsupportedFormat {
            output: output.name(),
            format,
        }),
    }
}

/// Compute every requested artifact and return `file name → contents`.
pub fn render_artifacts(cfg: &RunConfig) -> Result<BTreeMap<String, String>, RunError> {
    let mut files = BTreeMap::new();
    let plan: Vec<(Output, Vec<Format>)> = cfg
        .outputs
        .iter()
        .map(|&o| formats_for(o, cfg.format).map(|f| (o, f)))
        .collect::<Result<_, _>>()?;

    let a_grid = cfg.a_range.points();
    let e_grid = cfg.e_range.points();
    let sys = &cfg.system;

    let needs_critical = cfg
        .outputs
        .iter()
        .any(|o| matches!(o, Output::Critical | Output::Correlation | Output::Contour))
        || (cfg.outputs.contains(&Output::Spectrum) && cfg.spectrum_a.is_none());
    let critical =
        needs_critical.then(|| find_critical_with(sys, cfg.a_range.lo, cfg.a_range.hi, cfg.a_range.n, cfg.ep_tol));

    for (output, formats) in plan {
        match output {
            Output::Sweep => {
                let records = run_sweep(sys, &a_grid, cfg.ep_tol)?;
                for f in formats {
                    let body = match f {
                        Format::Json => render_sweep_json(&records),
                        _ => render_sweep_csv(&records),
                    };
                    files.insert(format!("sweep.{f}"), body);
                }
            }
            Output::Critical => {
                let report = critical.clone().expect("critical computed")?;
                files.insert("critical.json".into(), render_critical_json(&report));
            }
            Output::Spectrum => {
                let a_values = match &cfg.spectrum_a {
                    Some(list) => list.clone(),
                    None => {
                        let mut v = Vec::new();
                        if let Some(Ok(report)) = &critical {
                            v.push(report.a_cr);
                        }
                        v.push(cfg.a_range.lo);
                        v.push(cfg.a_range.hi);
                        v
                    }
                };
                let spectra = a_values
                    .iter()
                    .map(|&a| {
                        let t = transmission_profile(sys, a, &e_grid)?;
                        Ok(Spectrum {
                            a,
                            maxima: local_maxima(&e_grid, &t),
                            e: e_grid.clone(),
                            t,
                        })
                    })
                    .collect::<Result<Vec<_>, ScatteringError>>()?;
                for f in formats {
                    let body = match f {
                        Format::Json => render_spectrum_json(&spectra),
                        _ => render_spectrum_csv(&spectra),
                    };
                    files.insert(format!("spectrum.{f}"), body);
                }
            }
            Output::Contour => {
                let mut grid = transmission_grid(sys, &e_grid, &a_grid)?;
                if let Some(Ok(report)) = &critical {
                    grid = grid.with_marker(report.a_cr);
                }
                for f in formats {
                    let body = match f {
                        Format::Svg => render_svg_heatmap(&grid),
                        _ => render_contour_csv(&grid),
                    };
                    files.insert(format!("contour.{f}"), body);
                }
            }
            Output::Correlation => {
                let window = match &critical {
                    Some(Ok(report)) => report.window(),
                    _ => None,
                };
                let a_sub: Vec<f64> = match window {
                    Some((lo, hi)) => a_grid.iter().copied().filter(|a| *a >= lo && *a <= hi).collect(),
                    None => a_grid.clone(),
                };
                let records = run_sweep(sys, &a_sub, cfg.ep_tol)?;
                let grid = transmission_grid(sys, &e_grid, &a_sub)?;
                let pearson = rigidity_transmission_correlation(&records, &grid)?;
                let result = CorrelationResult {
                    pearson,
                    window,
                    a_points: a_sub.len(),
                    e_points: e_grid.len(),
                };
                files.insert("correlation.json".into(), render_correlation_json(&result));
            }
        }
    }
    Ok(files)
}

fn write_file(dir: &Path, name: &str, body: &[u8]) -> Result<(), RunError> {
    let path = dir.join(name);
    fs::write(&path, body).map_err(|source| RunError::Io { path, source })
}

/// Compute the requested artifacts, write them to `cfg.out_dir` and finish
/// with `manifest.json`.
pub fn run(cfg: &RunConfig) -> Result<Manifest, RunError> {
    let files = render_artifacts(cfg)?;
    fs::create_dir_all(&cfg.out_dir).map_err(|source| RunError::Io {
        path: cfg.out_dir.clone(),
        source,
    })?;
    let mut entries = Vec::with_capacity(files.len());
    for (name, body) in &files {
        write_file(&cfg.out_dir, name, body.as_bytes())?;
        entries.push(ArtifactEntry {
            file: name.clone(),
            bytes: body.len(),
            sha256: sha256_hex(body.as_bytes()),
        });
    }
    let manifest = Manifest { files: entries };
    write_file(&cfg.out_dir, "manifest.json", manifest.render().as_bytes())?;
    Ok(manifest)
}
