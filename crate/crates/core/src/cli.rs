//! `beambuckle` command-line front end.
//!
//! Exit codes: 0 clean run, 2 solver output written but partial (flagged
//! sweep points or an interrupted FEM path), 1 invalid input.
//!
//! Runs are configured with a TOML file; every key is optional and the
//! defaults describe the 100 µm × 1 µm × 1.5 µm polysilicon reference beam:
//!
//! ```toml
//! [geometry]
//! length_m = 100e-6
//! width_m = 1e-6
//! thickness_m = 1.5e-6
//! bending_axis = "weakest"       # in_plane | out_of_plane | weakest
//!
//! [material]
//! file = "polysilicon.mat"       # or inline keys overriding the default:
//! # E_s_pa, T_s_c, c_E_pa_per_c, E_min_pa, nu, T_0_c,
//! # cte = [[20.0, 21.6e-6], [900.0, 30e-6]]
//!
//! [solver]
//! mode = "tdep"                  # constant | tdep | both
//! closure = "span_compatible"    # or initial_length
//! p_min_over_pcr = 0.5           # or absolute p_min_n / p_max_n
//! p_max_over_pcr = 55.0
//! n_points = 200
//! spacing = "linear"             # or geometric
//! tol_t_c = 0.01
//! max_iter = 200
//! t_max_c = 420.0                # default T_0 + 400
//! n_steps = 200
//! n_elements = 64
//! imperfection_ratio = 1e-3      # T_0 midspan deflection / thickness
//! tol_r = 1e-8
//! tol_u = 1e-10
//! newton_max_iter = 30
//!
//! [output]
//! sweep_csv = "sweep.csv"
//! fem_csv = "fem_path.csv"
//! ```
//!
//! Relative paths inside a config file are resolved against its directory.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::compare::{self, CurveSource, ModelCurve};
use crate::elastica::{self, critical_load, Closure, PropertyIteration, PropertyMode, Spacing, SweepOptions};
use crate::error::FemError;
use crate::fem::{self, FemModel, NewtonTolerances, DEFAULT_ELEMENTS, DEFAULT_IMPERFECTION_RATIO};
use crate::fsutil::write_atomic;
use crate::geometry::{BeamGeometry, BendingAxis};
use crate::materials::{load_material, CteKnot, MaterialModel};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INVALID: u8 = 1;
pub const EXIT_PARTIAL: u8 = 2;

pub const PROPS_CSV_HEADER: &str = "temperature_c,E_pa,cte_per_c,thermal_strain";

#[derive(Debug, Parser)]
#[command(name = "beambuckle", version, about = "Thermal post-buckling of clamped-clamped micro beams")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analytical deflection curve over a range of thermal loads.
    Sweep(CommonArgs),
    /// Finite-element equilibrium path under temperature stepping.
    Fem(CommonArgs),
    /// RMS deviation of model curves from an experiment, plus overlay plot.
    Compare(CompareArgs),
    /// Tabulate E(T) and α(T) of a material.
    Props(PropsArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// TOML run configuration.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output CSV path (overrides the config).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Property mode (overrides the config).
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Experiment CSV (`temperature_c,deflection_m[,current_a]`).
    #[arg(long)]
    pub exp: PathBuf,
    /// Overlay output prefix; writes `<out>.csv` and `<out>.svg`.
    #[arg(long, default_value = "overlay")]
    pub out: PathBuf,
    /// Model curves: sweep or FEM CSVs, optionally prefixed with a source
    /// tag, e.g. `fem_tdep=path.csv`.
    #[arg(required = true)]
    pub models: Vec<String>,
}

#[derive(Debug, Args)]
pub struct PropsArgs {
    /// Run configuration whose material is tabulated.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Material file (overrides the config).
    #[arg(long)]
    pub material: Option<PathBuf>,
    /// First temperature, °C (default T_0).
    #[arg(long)]
    pub t_min: Option<f64>,
    /// Last temperature, °C (default 900).
    #[arg(long)]
    pub t_max: Option<f64>,
    /// Temperature step, °C.
    #[arg(long, default_value_t = 20.0)]
    pub step: f64,
    /// Also write the table to this CSV.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeArg {
    Constant,
    Tdep,
    Both,
}

impl ModeArg {
    fn modes(self) -> Vec<PropertyMode> {
        match self {
            Self::Constant => vec![PropertyMode::Constant],
            Self::Tdep => vec![PropertyMode::TemperatureDependent],
            Self::Both => vec![PropertyMode::Constant, PropertyMode::TemperatureDependent],
        }
    }
}

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub geometry: GeometryConfig,
    pub material: MaterialConfig,
    pub solver: SolverConfig,
    pub output: OutputConfig,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GeometryConfig {
    pub length_m: f64,
    pub width_m: f64,
    pub thickness_m: f64,
    pub bending_axis: BendingAxis,
}

impl Default for GeometryConfig {
    fn default() -> Self {
        let g = BeamGeometry::reference_beam();
        Self {
            length_m: g.length,
            width_m: g.width,
            thickness_m: g.thickness,
            bending_axis: g.bending_axis,
        }
    }
}

#[allow(non_snake_case)]
#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
pub struct MaterialConfig {
    pub file: Option<PathBuf>,
    pub E_s_pa: Option<f64>,
    pub T_s_c: Option<f64>,
    pub c_E_pa_per_c: Option<f64>,
    pub E_min_pa: Option<f64>,
    pub nu: Option<f64>,
    pub T_0_c: Option<f64>,
    /// `[[temperature_c, cte_per_c], ...]`
    pub cte: Option<Vec<[f64; 2]>>,
}

impl MaterialConfig {
    fn has_inline(&self) -> bool {
        self.E_s_pa.is_some()
            || self.T_s_c.is_some()
            || self.c_E_pa_per_c.is_some()
            || self.E_min_pa.is_some()
            || self.nu.is_some()
            || self.T_0_c.is_some()
            || self.cte.is_some()
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverConfig {
    pub mode: ModeArg,
    pub closure: Closure,
    pub p_min_n: Option<f64>,
    pub p_max_n: Option<f64>,
    pub p_min_over_pcr: f64,
    pub p_max_over_pcr: f64,
    pub n_points: usize,
    pub spacing: Spacing,
    pub tol_t_c: f64,
    pub max_iter: usize,
    pub t_max_c: Option<f64>,
    pub n_steps: usize,
    pub n_elements: usize,
    pub imperfection_ratio: f64,
    pub tol_r: f64,
    pub tol_u: f64,
    pub newton_max_iter: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        let it = PropertyIteration::default();
        let nt = NewtonTolerances::default();
        Self {
            mode: ModeArg::Tdep,
            closure: Closure::SpanCompatible,
            p_min_n: None,
            p_max_n: None,
            p_min_over_pcr: 0.5,
            p_max_over_pcr: 55.0,
            n_points: 200,
            spacing: Spacing::Linear,
            tol_t_c: it.tol_t,
            max_iter: it.max_iter,
            t_max_c: None,
            n_steps: 200,
            n_elements: DEFAULT_ELEMENTS,
            imperfection_ratio: DEFAULT_IMPERFECTION_RATIO,
            tol_r: nt.tol_r,
            tol_u: nt.tol_u,
            newton_max_iter: nt.max_iter,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    pub sweep_csv: PathBuf,
    pub fem_csv: PathBuf,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            sweep_csv: "sweep.csv".into(),
            fem_csv: "fem_path.csv".into(),
        }
    }
}

/// Validated run inputs.
#[derive(Debug, Clone)]
pub struct Run {
    pub config: RunConfig,
    pub geometry: BeamGeometry,
    pub material: MaterialModel,
    base_dir: PathBuf,
}

#[derive(Debug)]
struct CliError(String);

type CliResult<T> = Result<T, CliError>;

fn invalid(msg: impl Into<String>) -> CliError {
    CliError(msg.into())
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, String> {
        toml::from_str(text).map_err(|e| e.to_string())
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Self::from_toml(&text).map_err(|e| format!("{}: {e}", path.display()))
    }
}

impl Run {
    /// Loads and validates a configuration; `None` means all defaults.
    pub fn from_config_path(path: Option<&Path>) -> Result<Self, String> {
        let (config, base_dir) = match path {
            Some(p) => (
                RunConfig::load(p)?,
                p.parent().map(Path::to_path_buf).unwrap_or_default(),
            ),
            None => (RunConfig::default(), PathBuf::new()),
        };
        Self::new(config, base_dir).map_err(|e| match path {
            Some(p) => format!("{}: {}", p.display(), e.0),
            None => e.0,
        })
    }

    fn new(config: RunConfig, base_dir: PathBuf) -> CliResult<Self> {
        let g = &config.geometry;
        let geometry = BeamGeometry::new(g.length_m, g.width_m, g.thickness_m, g.bending_axis)
            .map_err(|e| invalid(format!("[geometry]: {e}")))?;
        let material = build_material(&config.material, &base_dir)?;
        let run = Self {
            config,
            geometry,
            material,
            base_dir,
        };
        run.check_solver()?;
        Ok(run)
    }

    fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }

    /// Absolute thermal-load range of the sweep, N.
    pub fn load_range(&self) -> (f64, f64) {
        let s = &self.config.solver;
        let p_cr = critical_load(&self.geometry, self.material.young_modulus(self.material.t_0));
        (
            s.p_min_n.unwrap_or(s.p_min_over_pcr * p_cr),
            s.p_max_n.unwrap_or(s.p_max_over_pcr * p_cr),
        )
    }

    pub fn t_max(&self) -> f64 {
        self.config.solver.t_max_c.unwrap_or(self.material.t_0 + 400.0)
    }

    pub fn sweep_options(&self, mode: PropertyMode) -> SweepOptions {
        let s = &self.config.solver;
        SweepOptions {
            n: s.n_points,
            spacing: s.spacing,
            mode,
            closure: s.closure,
            iteration: PropertyIteration {
                tol_t: s.tol_t_c,
                max_iter: s.max_iter,
            },
        }
    }

    pub fn newton_tolerances(&self) -> NewtonTolerances {
        let s = &self.config.solver;
        NewtonTolerances {
            tol_r: s.tol_r,
            tol_u: s.tol_u,
            max_iter: s.newton_max_iter,
        }
    }

    fn check_solver(&self) -> CliResult<()> {
        let s = &self.config.solver;
        let (p_min, p_max) = self.load_range();
        let (lo_name, hi_name) = (
            if s.p_min_n.is_some() { "p_min_n" } else { "p_min_over_pcr" },
            if s.p_max_n.is_some() { "p_max_n" } else { "p_max_over_pcr" },
        );
        if !(p_min.is_finite() && p_min > 0.0) {
            return Err(invalid(format!("[solver] {lo_name} must be positive, got {p_min}")));
        }
        if !(p_max.is_finite() && p_min < p_max) {
            return Err(invalid(format!(
                "[solver] {lo_name} ({p_min:e} N) must be below {hi_name} ({p_max:e} N)"
            )));
        }
        if s.n_points < 2 {
            return Err(invalid(format!("[solver] n_points must be at least 2, got {}", s.n_points)));
        }
        if !(s.tol_t_c > 0.0) || s.max_iter == 0 {
            return Err(invalid("[solver] tol_t_c and max_iter must be positive"));
        }
        let t_max = self.t_max();
        if !(t_max.is_finite() && t_max >= self.material.t_0) {
            return Err(invalid(format!(
                "[solver] t_max_c ({t_max}) must not be below T_0_c ({})",
                self.material.t_0
            )));
        }
        if s.n_steps == 0 {
            return Err(invalid("[solver] n_steps must be at least 1"));
        }
        if s.n_elements < 4 || s.n_elements % 2 != 0 {
            return Err(invalid(format!(
                "[solver] n_elements must be even and at least 4, got {}",
                s.n_elements
            )));
        }
        if !(s.imperfection_ratio.is_finite() && s.imperfection_ratio >= 0.0) {
            return Err(invalid(format!(
                "[solver] imperfection_ratio must be non-negative, got {}",
                s.imperfection_ratio
            )));
        }
        if !(s.tol_r > 0.0 && s.tol_u > 0.0) || s.newton_max_iter == 0 {
            return Err(invalid("[solver] tol_r, tol_u and newton_max_iter must be positive"));
        }
        Ok(())
    }
}

fn build_material(cfg: &MaterialConfig, base_dir: &Path) -> CliResult<MaterialModel> {
    if let Some(file) = &cfg.file {
        if cfg.has_inline() {
            return Err(invalid("[material]: give either `file` or inline keys, not both"));
        }
        let path = if file.is_absolute() { file.clone() } else { base_dir.join(file) };
        return load_material(&path).map_err(|e| invalid(format!("[material] file: {e}")));
    }
    let d = MaterialModel::polysilicon();
    let cte_table = match &cfg.cte {
        Some(rows) => rows
            .iter()
            .map(|&[temperature, cte]| CteKnot { temperature, cte })
            .collect(),
        None => d.cte_table.clone(),
    };
    MaterialModel::new(
        cfg.E_s_pa.unwrap_or(d.e_s),
        cfg.T_s_c.unwrap_or(d.t_s),
        cfg.c_E_pa_per_c.unwrap_or(d.c_e),
        cfg.E_min_pa.unwrap_or(d.e_min),
        cfg.nu.unwrap_or(d.nu),
        cte_table,
        cfg.T_0_c.unwrap_or(d.t_0),
    )
    .map_err(|e| invalid(format!("[material]: {e}")))
}

/// `sweep.csv` → `sweep_tdep.csv` when several modes share one output name.
fn mode_path(base: &Path, mode: PropertyMode, several: bool) -> PathBuf {
    if !several {
        return base.to_path_buf();
    }
    let stem = base.file_stem().map_or_else(|| "out".into(), |s| s.to_string_lossy().into_owned());
    let name = match base.extension() {
        Some(ext) => format!("{stem}_{}.{}", mode.as_str(), ext.to_string_lossy()),
        None => format!("{stem}_{}", mode.as_str()),
    };
    base.with_file_name(name)
}

fn write_output(path: &Path, text: &str) -> CliResult<()> {
    write_atomic(path, text.as_bytes()).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INVALID,
            };
            let target: &mut dyn Write = if code == EXIT_OK { stdout } else { stderr };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::Sweep(a) => cmd_sweep(&a, stdout, stderr),
        Command::Fem(a) => cmd_fem(&a, stdout, stderr),
        Command::Compare(a) => cmd_compare(&a, stdout),
        Command::Props(a) => cmd_props(&a, stdout),
    };
    match result {
        Ok(code) => code,
        Err(CliError(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_INVALID
        }
    }
}

fn load_run(config: Option<&Path>, stderr: &mut dyn Write) -> CliResult<Run> {
    let run = Run::from_config_path(config).map_err(CliError)?;
    if let Some(w) = run.geometry.slenderness_warning() {
        let _ = writeln!(stderr, "warning: {w}");
    }
    Ok(run)
}

fn selected_modes(args: &CommonArgs, run: &Run) -> Vec<PropertyMode> {
    args.mode.unwrap_or(run.config.solver.mode).modes()
}

fn cmd_sweep(args: &CommonArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<u8> {
    let run = load_run(args.config.as_deref(), stderr)?;
    let modes = selected_modes(args, &run);
    let base = args.out.clone().unwrap_or_else(|| run.resolve(&run.config.output.sweep_csv));
    let (p_min, p_max) = run.load_range();

    let mut outputs = Vec::new();
    for &mode in &modes {
        let points = elastica::sweep(&run.geometry, &run.material, p_min, p_max, &run.sweep_options(mode))
            .map_err(|e| invalid(format!("[solver]: {e}")))?;
        outputs.push((mode, points));
    }

    let mut code = EXIT_OK;
    for (mode, points) in &outputs {
        let path = mode_path(&base, *mode, modes.len() > 1);
        write_output(&path, &elastica::sweep_csv(points))?;
        let flagged = points.iter().filter(|p| !p.is_clean()).count();
        let _ = writeln!(
            stdout,
            "{} sweep: {} points -> {}{}",
            mode.as_str(),
            points.len(),
            path.display(),
            if flagged > 0 {
                format!(" ({flagged} flagged non-converged)")
            } else {
                String::new()
            }
        );
        if flagged > 0 {
            code = EXIT_PARTIAL;
        }
    }
    Ok(code)
}

fn cmd_fem(args: &CommonArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<u8> {
    let run = load_run(args.config.as_deref(), stderr)?;
    let modes = selected_modes(args, &run);
    let base = args.out.clone().unwrap_or_else(|| run.resolve(&run.config.output.fem_csv));
    let s = &run.config.solver;
    let model = FemModel::with_imperfection_ratio(run.geometry, s.n_elements, &run.material, s.imperfection_ratio)
        .map_err(|e| invalid(format!("[solver]: {e}")))?;
    let tol = run.newton_tolerances();

    let mut code = EXIT_OK;
    for &mode in &modes {
        let mat = match mode {
            PropertyMode::Constant => run.material.frozen_at(run.material.t_0),
            PropertyMode::TemperatureDependent => run.material.clone(),
        };
        let path_out = mode_path(&base, mode, modes.len() > 1);
        let (path, note) = match fem::solve_path(&model, &mat, run.t_max(), s.n_steps, &tol) {
            Ok(p) => (p, String::new()),
            Err(FemError::Convergence { temperature, partial }) => {
                code = EXIT_PARTIAL;
                (*partial, format!(" (stopped: no convergence at T = {temperature} °C)"))
            }
            Err(e) => return Err(invalid(format!("[solver]: {e}"))),
        };
        write_output(&path_out, &path.csv())?;
        let _ = writeln!(
            stdout,
            "{} FEM path: {} steps -> {}{note}",
            mode.as_str(),
            path.steps.len(),
            path_out.display()
        );
    }
    Ok(code)
}

fn parse_model_arg(arg: &str) -> CliResult<(Option<CurveSource>, PathBuf)> {
    match arg.split_once('=') {
        Some((tag, path)) => {
            let source = tag.parse::<CurveSource>().map_err(|e| invalid(format!("model `{arg}`: {e}")))?;
            Ok((Some(source), PathBuf::from(path)))
        }
        None => Ok((None, PathBuf::from(arg))),
    }
}

fn cmd_compare(args: &CompareArgs, stdout: &mut dyn Write) -> CliResult<u8> {
    let exp = compare::load_experiment(&args.exp).map_err(|e| invalid(format!("--exp: {e}")))?;
    let mut curves: Vec<ModelCurve> = Vec::new();
    for arg in &args.models {
        let (source, path) = parse_model_arg(arg)?;
        curves.push(compare::load_model_curve(&path, source).map_err(|e| invalid(e.to_string()))?);
    }
    let mut reports = Vec::new();
    for c in &curves {
        reports.push(compare::rms_deviation(c, &exp).map_err(|e| invalid(e.to_string()))?);
    }
    let (csv_path, svg_path) =
        compare::export_overlay(&curves, Some(&exp), &args.out).map_err(|e| invalid(e.to_string()))?;

    let mut text = String::new();
    let _ = writeln!(text, "experiment: {} ({} points)", exp.label, exp.points.len());
    for (c, r) in curves.iter().zip(&reports) {
        let _ = writeln!(
            text,
            "{} [{}]: RMS = {:.4} µm over {} points",
            c.label,
            c.source,
            r.rms * 1e6,
            r.included()
        );
        let excluded = r.excluded();
        if !excluded.is_empty() {
            let list: Vec<String> = excluded.iter().map(|t| format!("{t}")).collect();
            let _ = writeln!(text, "  excluded (outside model span): {} °C", list.join(", "));
        }
    }
    let _ = write!(text, "\ntemperature_c,experiment_um");
    for c in &curves {
        let _ = write!(text, ",{}_residual_um", c.label);
    }
    text.push('\n');
    for (i, p) in exp.points.iter().enumerate() {
        let _ = write!(text, "{},{:.4}", p.temperature, p.deflection * 1e6);
        for r in &reports {
            match r.points[i].residual() {
                Some(v) => {
                    let _ = write!(text, ",{:.4}", v * 1e6);
                }
                None => text.push_str(",NaN"),
            }
        }
        text.push('\n');
    }
    let _ = writeln!(text, "\noverlay: {} {}", csv_path.display(), svg_path.display());
    let _ = stdout.write_all(text.as_bytes());
    Ok(EXIT_OK)
}

/// `E(T)`, `α(T)` and free thermal strain at the given temperatures.
pub fn props_table(mat: &MaterialModel, temperatures: &[f64]) -> String {
    let mut out = String::new();
    out.push_str(PROPS_CSV_HEADER);
    out.push('\n');
    for &t in temperatures {
        let _ = writeln!(
            out,
            "{t},{:.16e},{:.16e},{:.16e}",
            mat.young_modulus(t),
            mat.cte(t),
            mat.thermal_strain(t)
        );
    }
    out
}

fn cmd_props(args: &PropsArgs, stdout: &mut dyn Write) -> CliResult<u8> {
    let material = match &args.material {
        Some(p) => load_material(p).map_err(|e| invalid(format!("--material: {e}")))?,
        None => Run::from_config_path(args.config.as_deref()).map_err(CliError)?.material,
    };
    let t_min = args.t_min.unwrap_or(material.t_0);
    let t_max = args.t_max.unwrap_or(900.0);
    if !(t_min.is_finite() && t_max.is_finite()) || t_max < t_min {
        return Err(invalid(format!(
            "--t-min ({t_min}) must not exceed --t-max ({t_max}); descending ranges are not supported"
        )));
    }
    if !(args.step.is_finite() && args.step > 0.0) {
        return Err(invalid(format!("--step must be positive, got {}", args.step)));
    }
    let n = ((t_max - t_min) / args.step + 1e-9).floor() as usize;
    let mut temps: Vec<f64> = (0..=n).map(|i| t_min + i as f64 * args.step).collect();
    if temps.last().is_some_and(|&t| t < t_max) {
        temps.push(t_max);
    }
    let table = props_table(&material, &temps);
    if let Some(out) = &args.out {
        write_output(out, &table)?;
    }
    let _ = stdout.write_all(table.as_bytes());
    Ok(EXIT_OK)
}
