//! Model-versus-experiment comparison on the temperature axis.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::elastica::SweepPoint;
use crate::error::CompareError;
use crate::fem::FemSolutionPath;
use crate::fsutil::write_atomic;

pub const EXPERIMENT_CSV_HEADER: &str = "temperature_c,deflection_m,current_a";
pub const OVERLAY_CSV_HEADER: &str = "series,temperature_c,deflection_m";

/// Named (°C, m) series as read back from an overlay CSV.
pub type OverlaySeries = (String, Vec<(f64, f64)>);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentPoint {
    /// °C
    pub temperature: f64,
    /// m
    pub deflection: f64,
    /// Drive current, A. Carried for labelling only.
    pub current: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentCurve {
    pub label: String,
    pub points: Vec<ExperimentPoint>,
}

impl ExperimentCurve {
    pub fn new(label: impl Into<String>, points: Vec<ExperimentPoint>) -> Result<Self, CompareError> {
        let curve = Self {
            label: label.into(),
            points,
        };
        curve.validate()?;
        Ok(curve)
    }

    pub fn validate(&self) -> Result<(), CompareError> {
        if self.points.len() < 2 {
            return Err(CompareError::Validation(format!(
                "experiment '{}' needs at least 2 points, has {}",
                self.label,
                self.points.len()
            )));
        }
        for (i, p) in self.points.iter().enumerate() {
            let row = i + 1;
            if !p.temperature.is_finite() || !p.deflection.is_finite() {
                return Err(CompareError::Validation(format!("experiment row {row}: non-finite value")));
            }
            if p.deflection < 0.0 {
                return Err(CompareError::Validation(format!(
                    "experiment row {row}: negative deflection {}",
                    p.deflection
                )));
            }
            if i > 0 && p.temperature <= self.points[i - 1].temperature {
                return Err(CompareError::Validation(format!(
                    "experiment row {row}: temperature {} is not above the previous row",
                    p.temperature
                )));
            }
        }
        Ok(())
    }
}

/// Reads an experiment CSV with header `temperature_c,deflection_m[,current_a]`.
pub fn load_experiment(path: impl AsRef<Path>) -> Result<ExperimentCurve, CompareError> {
    let path = path.as_ref();
    let mut reader = csv_reader(path)?;
    let headers = reader.headers().map_err(|e| csv_err(path, 1, e))?.clone();
    let column = |name: &str| headers.iter().position(|h| h.trim() == name);
    let missing = |name: &str| CompareError::Parse {
        path: path.to_path_buf(),
        row: 1,
        message: format!("missing column `{name}`"),
    };
    let t_col = column("temperature_c").ok_or_else(|| missing("temperature_c"))?;
    let d_col = column("deflection_m").ok_or_else(|| missing("deflection_m"))?;
    let i_col = column("current_a");

    let mut points = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| csv_err(path, 0, e))?;
        let row = record.position().map_or(0, |p| p.line() as usize);
        let field = |col: usize| -> Result<f64, CompareError> {
            let raw = record.get(col).unwrap_or("").trim();
            raw.parse().map_err(|_| CompareError::Parse {
                path: path.to_path_buf(),
                row,
                message: format!("cannot parse `{raw}` in column `{}`", &headers[col]),
            })
        };
        let current = match i_col {
            Some(c) if !record.get(c).unwrap_or("").trim().is_empty() => Some(field(c)?),
            _ => None,
        };
        points.push(ExperimentPoint {
            temperature: field(t_col)?,
            deflection: field(d_col)?,
            current,
        });
    }
    let label = path.file_stem().map_or_else(|| "experiment".into(), |s| s.to_string_lossy().into_owned());
    ExperimentCurve::new(label, points)
}

/// Which model produced a curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurveSource {
    AnalyticConst,
    AnalyticTdep,
    FemTdep,
    FemConst,
}

impl CurveSource {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::AnalyticConst => "analytic_const",
            Self::AnalyticTdep => "analytic_tdep",
            Self::FemTdep => "fem_tdep",
            Self::FemConst => "fem_const",
        }
    }
}

impl fmt::Display for CurveSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CurveSource {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "analytic_const" => Ok(Self::AnalyticConst),
            "analytic_tdep" => Ok(Self::AnalyticTdep),
            "fem_tdep" => Ok(Self::FemTdep),
            "fem_const" => Ok(Self::FemConst),
            other => Err(format!(
                "unknown curve source `{other}` (expected analytic_const, analytic_tdep, fem_tdep or fem_const)"
            )),
        }
    }
}

/// Piecewise-linear deflection-versus-temperature curve from a model.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelCurve {
    pub label: String,
    pub source: CurveSource,
    /// (°C, m), temperatures strictly increasing
    pub points: Vec<(f64, f64)>,
}

impl ModelCurve {
    pub fn new(label: impl Into<String>, source: CurveSource, points: Vec<(f64, f64)>) -> Result<Self, CompareError> {
        let label = label.into();
        if points.is_empty() {
            return Err(CompareError::Validation(format!("model curve '{label}' is empty")));
        }
        for (i, w) in points.windows(2).enumerate() {
            if !(w[1].0 > w[0].0) {
                return Err(CompareError::Validation(format!(
                    "model curve '{label}': temperature at point {} ({}) is not above the previous one ({})",
                    i + 2,
                    w[1].0,
                    w[0].0
                )));
            }
        }
        Ok(Self { label, source, points })
    }

    /// Converged sweep points as a (temperature, deflection) curve.
    pub fn from_sweep(label: impl Into<String>, source: CurveSource, sweep: &[SweepPoint]) -> Result<Self, CompareError> {
        let pts = sweep
            .iter()
            .filter(|p| p.is_clean())
            .filter_map(|p| p.state())
            .map(|s| (s.temperature, s.gamma_max))
            .collect();
        Self::new(label, source, pts)
    }

    pub fn from_fem_path(label: impl Into<String>, source: CurveSource, path: &FemSolutionPath) -> Result<Self, CompareError> {
        let pts = path.steps.iter().map(|s| (s.temperature, s.midspan_deflection)).collect();
        Self::new(label, source, pts)
    }

    pub fn span(&self) -> (f64, f64) {
        (self.points[0].0, self.points[self.points.len() - 1].0)
    }

    /// Linear interpolation; `None` outside the curve's temperature span.
    pub fn interpolate(&self, t: f64) -> Option<f64> {
        let (lo, hi) = self.span();
        if !(lo..=hi).contains(&t) {
            return None;
        }
        let i = self.points.partition_point(|p| p.0 < t);
        if self.points[i].0 == t {
            return Some(self.points[i].1);
        }
        let (a, b) = (self.points[i - 1], self.points[i]);
        Some(a.1 + (t - a.0) / (b.0 - a.0) * (b.1 - a.1))
    }
}

/// Reads a sweep CSV or an FEM path CSV (detected from the header).
///
/// Sweep rows flagged as non-converged are skipped. When `source` is not
/// given it is inferred from the kind of file and from "tdep"/"const" in
/// the file name.
pub fn load_model_curve(path: impl AsRef<Path>, source: Option<CurveSource>) -> Result<ModelCurve, CompareError> {
    let path = path.as_ref();
    let mut reader = csv_reader(path)?;
    let headers = reader.headers().map_err(|e| csv_err(path, 1, e))?.clone();
    let column = |name: &str| headers.iter().position(|h| h.trim() == name);
    let (t_col, d_col, flag_col, is_fem) = if let Some(d) = column("gamma_mid_m") {
        (column("T_c"), d, None, true)
    } else if let Some(d) = column("gamma_max_m") {
        (column("T_c"), d, column("converged"), false)
    } else {
        return Err(CompareError::Parse {
            path: path.to_path_buf(),
            row: 1,
            message: "not a sweep or FEM path CSV: need `gamma_max_m` or `gamma_mid_m`".into(),
        });
    };
    let t_col = t_col.ok_or_else(|| CompareError::Parse {
        path: path.to_path_buf(),
        row: 1,
        message: "missing column `T_c`".into(),
    })?;

    let mut points = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| csv_err(path, 0, e))?;
        let row = record.position().map_or(0, |p| p.line() as usize);
        if let Some(c) = flag_col {
            if record.get(c).map(str::trim) != Some("true") {
                continue;
            }
        }
        let num = |col: usize| -> Result<f64, CompareError> {
            let raw = record.get(col).unwrap_or("").trim();
            raw.parse().map_err(|_| CompareError::Parse {
                path: path.to_path_buf(),
                row,
                message: format!("cannot parse `{raw}` in column `{}`", &headers[col]),
            })
        };
        points.push((num(t_col)?, num(d_col)?));
    }

    let stem = path.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
    let source = source.unwrap_or_else(|| {
        let tdep = stem.contains("tdep");
        match (is_fem, tdep) {
            (true, true) => CurveSource::FemTdep,
            (true, false) => CurveSource::FemConst,
            (false, true) => CurveSource::AnalyticTdep,
            (false, false) => CurveSource::AnalyticConst,
        }
    });
    ModelCurve::new(stem, source, points)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointResidual {
    pub temperature: f64,
    pub experiment: f64,
    /// Interpolated model deflection; `None` when outside the model span.
    pub model: Option<f64>,
}

impl PointResidual {
    pub fn residual(&self) -> Option<f64> {
        self.model.map(|m| m - self.experiment)
    }

    pub fn included(&self) -> bool {
        self.model.is_some()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RmsReport {
    pub label: String,
    /// m
    pub rms: f64,
    pub points: Vec<PointResidual>,
}

impl RmsReport {
    pub fn included(&self) -> usize {
        self.points.iter().filter(|p| p.included()).count()
    }

    /// Temperatures of experimental points outside the model span.
    pub fn excluded(&self) -> Vec<f64> {
        self.points.iter().filter(|p| !p.included()).map(|p| p.temperature).collect()
    }
}

/// Root-mean-square deflection deviation at the experimental temperatures.
///
/// Experimental points outside the model's temperature span are excluded
/// (and listed in the report) rather than extrapolated.
pub fn rms_deviation(model: &ModelCurve, exp: &ExperimentCurve) -> Result<RmsReport, CompareError> {
    let points: Vec<PointResidual> = exp
        .points
        .iter()
        .map(|p| PointResidual {
            temperature: p.temperature,
            experiment: p.deflection,
            model: model.interpolate(p.temperature),
        })
        .collect();
    let residuals: Vec<f64> = points.iter().filter_map(PointResidual::residual).collect();
    if residuals.len() < 2 {
        return Err(CompareError::Coverage {
            label: model.label.clone(),
            included: residuals.len(),
        });
    }
    let mean_sq = residuals.iter().map(|r| r * r).sum::<f64>() / residuals.len() as f64;
    Ok(RmsReport {
        label: model.label.clone(),
        rms: mean_sq.sqrt(),
        points,
    })
}

/// Long-format overlay table: one row per point, experiment last.
pub fn overlay_csv(curves: &[ModelCurve], exp: Option<&ExperimentCurve>) -> String {
    let mut out = String::new();
    out.push_str(OVERLAY_CSV_HEADER);
    out.push('\n');
    for c in curves {
        for &(t, d) in &c.points {
            let _ = writeln!(out, "{},{t:.16e},{d:.16e}", c.label);
        }
    }
    if let Some(e) = exp {
        for p in &e.points {
            let _ = writeln!(out, "{},{:.16e},{:.16e}", e.label, p.temperature, p.deflection);
        }
    }
    out
}

/// Reads an overlay CSV back into named series, in order of first appearance.
pub fn load_overlay(path: impl AsRef<Path>) -> Result<Vec<OverlaySeries>, CompareError> {
    let path = path.as_ref();
    let mut reader = csv_reader(path)?;
    let headers = reader.headers().map_err(|e| csv_err(path, 1, e))?.clone();
    if headers.iter().map(str::trim).collect::<Vec<_>>().join(",") != OVERLAY_CSV_HEADER {
        return Err(CompareError::Parse {
            path: path.to_path_buf(),
            row: 1,
            message: format!("overlay header must be `{OVERLAY_CSV_HEADER}`"),
        });
    }
    let mut order: Vec<String> = Vec::new();
    let mut series: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
    for record in reader.records() {
        let record = record.map_err(|e| csv_err(path, 0, e))?;
        let row = record.position().map_or(0, |p| p.line() as usize);
        let num = |i: usize| -> Result<f64, CompareError> {
            let raw = record.get(i).unwrap_or("").trim();
            raw.parse().map_err(|_| CompareError::Parse {
                path: path.to_path_buf(),
                row,
                message: format!("cannot parse `{raw}`"),
            })
        };
        let name = record.get(0).unwrap_or("").to_string();
        let pt = (num(1)?, num(2)?);
        if !series.contains_key(&name) {
            order.push(name.clone());
        }
        series.entry(name).or_default().push(pt);
    }
    Ok(order
        .into_iter()
        .map(|name| {
            let pts = series.remove(&name).unwrap_or_default();
            (name, pts)
        })
        .collect())
}

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

fn nice_step(range: f64, target_ticks: f64) -> f64 {
    let raw = (range / target_ticks).max(f64::MIN_POSITIVE);
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let m = if norm <= 1.0 {
        1.0
    } else if norm <= 2.0 {
        2.0
    } else if norm <= 5.0 {
        5.0
    } else {
        10.0
    };
    m * mag
}

fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let step = nice_step(hi - lo, 6.0);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step + 1e-9).floor() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

fn fmt_tick(v: f64) -> String {
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

/// Static SVG plot of deflection (µm) against temperature (°C).
pub fn overlay_svg(curves: &[ModelCurve], exp: Option<&ExperimentCurve>) -> String {
    const W: f64 = 760.0;
    const H: f64 = 500.0;
    const LEFT: f64 = 80.0;
    const RIGHT: f64 = 200.0;
    const TOP: f64 = 30.0;
    const BOTTOM: f64 = 60.0;

    let mut t_lo = f64::INFINITY;
    let mut t_hi = f64::NEG_INFINITY;
    let mut d_hi = 0.0_f64;
    let mut d_lo = 0.0_f64;
    let all = curves
        .iter()
        .flat_map(|c| c.points.iter().copied())
        .chain(exp.into_iter().flat_map(|e| e.points.iter().map(|p| (p.temperature, p.deflection))));
    for (t, d) in all {
        t_lo = t_lo.min(t);
        t_hi = t_hi.max(t);
        d_hi = d_hi.max(d * 1e6);
        d_lo = d_lo.min(d * 1e6);
    }
    if !t_lo.is_finite() {
        t_lo = 0.0;
        t_hi = 1.0;
    }
    if t_hi <= t_lo {
        t_hi = t_lo + 1.0;
    }
    if d_hi <= d_lo {
        d_hi = d_lo + 1.0;
    }
    let (x_step, y_step) = (nice_step(t_hi - t_lo, 6.0), nice_step(d_hi - d_lo, 6.0));
    let (x0, x1) = ((t_lo / x_step).floor() * x_step, (t_hi / x_step).ceil() * x_step);
    let (y0, y1) = ((d_lo / y_step).floor() * y_step, (d_hi / y_step).ceil() * y_step);
    let pw = W - LEFT - RIGHT;
    let ph = H - TOP - BOTTOM;
    let sx = |t: f64| LEFT + (t - x0) / (x1 - x0) * pw;
    let sy = |d_um: f64| TOP + ph - (d_um - y0) / (y1 - y0) * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    );
    for t in ticks(x0, x1) {
        let x = sx(t);
        let _ = writeln!(
            s,
            r##"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{TOP}" stroke="#dddddd"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"##,
            TOP + ph,
            TOP + ph + 18.0,
            fmt_tick(t)
        );
    }
    for d in ticks(y0, y1) {
        let y = sy(d);
        let _ = writeln!(
            s,
            r##"<line x1="{LEFT}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#dddddd"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"##,
            LEFT + pw,
            LEFT - 6.0,
            y + 4.0,
            fmt_tick(d)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">Temperature (°C)</text>"#,
        LEFT + pw / 2.0,
        H - 15.0
    );
    let _ = writeln!(
        s,
        r#"<text x="20" y="{:.2}" text-anchor="middle" transform="rotate(-90 20 {:.2})">Midspan deflection (µm)</text>"#,
        TOP + ph / 2.0,
        TOP + ph / 2.0
    );

    let mut legend_y = TOP + 10.0;
    let legend_x = LEFT + pw + 15.0;
    for (i, c) in curves.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let pts: Vec<String> = c
            .points
            .iter()
            .map(|&(t, d)| format!("{:.2},{:.2}", sx(t), sy(d * 1e6)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            pts.join(" ")
        );
        let _ = writeln!(
            s,
            r#"<line x1="{legend_x}" y1="{legend_y}" x2="{:.2}" y2="{legend_y}" stroke="{color}" stroke-width="2"/><text x="{:.2}" y="{:.2}">{} ({})</text>"#,
            legend_x + 20.0,
            legend_x + 26.0,
            legend_y + 4.0,
            xml_escape(&c.label),
            c.source
        );
        legend_y += 20.0;
    }
    if let Some(e) = exp {
        for p in &e.points {
            let _ = writeln!(
                s,
                r#"<circle cx="{:.2}" cy="{:.2}" r="3.5" fill="black"/>"#,
                sx(p.temperature),
                sy(p.deflection * 1e6)
            );
        }
        let _ = writeln!(
            s,
            r#"<circle cx="{:.2}" cy="{legend_y}" r="3.5" fill="black"/><text x="{:.2}" y="{:.2}">{}</text>"#,
            legend_x + 10.0,
            legend_x + 26.0,
            legend_y + 4.0,
            xml_escape(&e.label)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Writes `<out>.csv` and `<out>.svg`; returns both paths.
pub fn export_overlay(
    curves: &[ModelCurve],
    exp: Option<&ExperimentCurve>,
    out_path: impl AsRef<Path>,
) -> Result<(PathBuf, PathBuf), CompareError> {
    if curves.is_empty() {
        return Err(CompareError::Validation("overlay needs at least one model curve".into()));
    }
    let out = out_path.as_ref();
    let csv_path = out.with_extension("csv");
    let svg_path = out.with_extension("svg");
    let io_err = |path: &Path| {
        let path = path.to_path_buf();
        move |source| CompareError::Io { path, source }
    };
    write_atomic(&csv_path, overlay_csv(curves, exp).as_bytes()).map_err(io_err(&csv_path))?;
    write_atomic(&svg_path, overlay_svg(curves, exp).as_bytes()).map_err(io_err(&svg_path))?;
    Ok((csv_path, svg_path))
}

fn csv_reader(path: &Path) -> Result<csv::Reader<std::fs::File>, CompareError> {
    let file = std::fs::File::open(path).map_err(|source| CompareError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(file))
}

fn csv_err(path: &Path, row: usize, e: csv::Error) -> CompareError {
    let row = e.position().map_or(row, |p| p.line() as usize);
    CompareError::Parse {
        path: path.to_path_buf(),
        row,
        message: e.to_string(),
    }
}
