//! Analytical post-buckling of a clamped-clamped beam under uniform heating.
//!
//! By symmetry one quarter of the first buckling mode is an elastica arm of
//! arc length `L′/4` between a clamp and an inflection point. With axial
//! force `N` and `λ = √(N/EI)` the elastica gives
//!
//! ```text
//! K(β) = λ L′ / 4,      γ_max = 4β / λ,      β = sin(θ_max / 2)
//! ```
//!
//! and thermal compatibility of the heated, compressed beam reads
//!
//! ```text
//! α (T − T₀) = ε + N / (E A),      ε = (L′ − L) / L
//! ```
//!
//! which, solved for `T`, is
//!
//! ```text
//! T = [4 K E A √(N E I) − N L E A + N² L] / (N L E A α) + T₀
//! γ_max = 4 β √( I / ([−ε + α (T − T₀)] A) )
//! ```
//!
//! The loading parameter `P` is the *thermal load*: the compressive force a
//! straight, fully restrained beam would carry, `P = E A α (T − T₀)`. Below
//! the Euler load `P_cr = 4π² E I / L²` the beam stays straight and `N = P`.
//! Above it a [`Closure`] fixes the remaining unknown:
//!
//! * [`Closure::SpanCompatible`] keeps the clamps `L` apart,
//!   `4 (2E(β) − K(β)) / λ = L`, so `N` relaxes slightly below `P_cr` and the
//!   extra arc length carries the thermal strain. This matches the
//!   finite-element model.
//! * [`Closure::InitialLength`] sets the elastica arc length to the initial
//!   length, `K(β) = √(P/EI) L / 4`, so `ε = 0` and `N = P`.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::io;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::elliptic::{complete_integrals, invert_k};
use crate::error::ElasticaError;
use crate::geometry::BeamGeometry;
use crate::materials::MaterialModel;

/// Header of the sweep CSV.
pub const SWEEP_CSV_HEADER: &str = "P_n,beta,theta_max_rad,epsilon,T_c,gamma_max_m,converged,iters";

/// Sweeps stop trusting the quarter-beam model beyond this modulus.
pub const BETA_CAP: f64 = 0.9999;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Closure {
    #[default]
    SpanCompatible,
    InitialLength,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum PropertyMode {
    /// Properties frozen at the strain-free temperature `T_0`.
    #[serde(rename = "constant")]
    Constant,
    /// Properties evaluated at the beam temperature.
    #[default]
    #[serde(rename = "tdep")]
    TemperatureDependent,
}

impl PropertyMode {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Constant => "constant",
            Self::TemperatureDependent => "tdep",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Convergence {
    pub converged: bool,
    pub iterations: usize,
}

impl Convergence {
    const DIRECT: Self = Self {
        converged: true,
        iterations: 0,
    };
}

/// One equilibrium of the heated beam.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElasticaState {
    /// Restrained thermal load `P = E A α (T − T₀)`, N
    pub thermal_load: f64,
    /// Actual compressive axial force, N
    pub axial_force: f64,
    pub beta: f64,
    pub theta_max: f64,
    pub epsilon: f64,
    /// Average beam temperature, °C
    pub temperature: f64,
    /// Midspan deflection, m
    pub gamma_max: f64,
    pub convergence: Convergence,
}

impl ElasticaState {
    pub fn is_buckled(&self) -> bool {
        self.beta > 0.0
    }
}

/// Clamped-clamped Euler load of the first mode, `4π² E I / L²`.
pub fn critical_load(geom: &BeamGeometry, e: f64) -> f64 {
    4.0 * PI * PI * e * geom.second_moment() / (geom.length * geom.length)
}

/// Temperature rise at buckling onset for constant properties.
pub fn critical_temperature_rise(geom: &BeamGeometry, e: f64, alpha: f64) -> f64 {
    critical_load(geom, e) / (e * geom.area() * alpha)
}

/// Temperature rise at buckling onset for a temperature-dependent material:
/// the root of `α(T)(T − T₀) = 4π² I / (A L²)`, found by fixed-point
/// iteration on `T`.
pub fn critical_temperature(geom: &BeamGeometry, mat: &MaterialModel) -> f64 {
    let strain = 4.0 * PI * PI * geom.second_moment() / (geom.area() * geom.length * geom.length);
    let mut t = mat.t_0 + strain / mat.cte(mat.t_0);
    for _ in 0..200 {
        let next = mat.t_0 + strain / mat.cte(t);
        if (next - t).abs() < 1e-12 * (1.0 + t.abs()) {
            return next;
        }
        t = next;
    }
    t
}

fn check_positive(name: &str, v: f64) -> Result<(), ElasticaError> {
    if !(v.is_finite() && v > 0.0) {
        return Err(ElasticaError::Domain(format!("{name} must be positive and finite, got {v}")));
    }
    Ok(())
}

/// Temperature from the load/deflection relation of the elastica.
fn temperature_relation(geom: &BeamGeometry, e: f64, alpha: f64, t_0: f64, k: f64, n: f64) -> f64 {
    let (a, i, l) = (geom.area(), geom.second_moment(), geom.length);
    (4.0 * k * e * a * (n * e * i).sqrt() - n * l * e * a + n * n * l) / (n * l * e * a * alpha) + t_0
}

/// Maximum deflection from β and the mechanical strain `−ε + α(T − T₀)`.
fn deflection_relation(
    geom: &BeamGeometry,
    beta: f64,
    epsilon: f64,
    alpha: f64,
    rise: f64,
) -> Result<f64, ElasticaError> {
    let radicand = -epsilon + alpha * rise;
    if radicand <= 0.0 {
        return Err(ElasticaError::Numerical(format!(
            "non-positive mechanical strain −ε + αΔT = {radicand:e}; inconsistent property set"
        )));
    }
    Ok(4.0 * beta * (geom.second_moment() / (radicand * geom.area())).sqrt())
}

/// Modulus at which the clamps would touch (`2E(β) = K(β)`), ≈ 0.9089.
fn span_collapse_modulus() -> f64 {
    static CELL: OnceLock<f64> = OnceLock::new();
    *CELL.get_or_init(|| {
        let (mut lo, mut hi) = (0.5_f64, 0.99_f64);
        while hi - lo > f64::EPSILON {
            let mid = 0.5 * (lo + hi);
            let ints = complete_integrals(mid);
            if 2.0 * ints.e - ints.k > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    })
}

/// Bisection for the increasing function `f` on `[0, upper)`, root of `f = 0`.
fn bisect_increasing(upper: f64, f: impl Fn(f64) -> f64) -> f64 {
    let (mut lo, mut hi) = (0.0_f64, upper);
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Thermal strain `α(T − T₀)` carried by a span-compatible elastica with
/// modulus β. `slenderness = 16 I / (A L²)`.
fn span_compatible_strain(beta: f64, slenderness: f64) -> f64 {
    let ints = complete_integrals(beta);
    let span = 2.0 * ints.e - ints.k;
    // L′/L − 1 = K/(2E − K) − 1 = 2(K − E)/(2E − K)
    2.0 * ints.k_minus_e / span + slenderness * span * span
}

fn slenderness(geom: &BeamGeometry) -> f64 {
    16.0 * geom.second_moment() / (geom.area() * geom.length * geom.length)
}

/// Equilibrium at thermal load `p` with frozen properties `e`, `alpha`.
pub fn solve_state(
    geom: &BeamGeometry,
    e: f64,
    alpha: f64,
    t_0: f64,
    p: f64,
    closure: Closure,
) -> Result<ElasticaState, ElasticaError> {
    geom.validate()?;
    check_positive("Young's modulus", e)?;
    check_positive("thermal expansion coefficient", alpha)?;
    check_positive("thermal load", p)?;
    if !t_0.is_finite() {
        return Err(ElasticaError::Domain("reference temperature must be finite".into()));
    }

    let (a, i, l) = (geom.area(), geom.second_moment(), geom.length);
    let p_cr = critical_load(geom, e);
    if p <= p_cr {
        return Ok(ElasticaState {
            thermal_load: p,
            axial_force: p,
            beta: 0.0,
            theta_max: 0.0,
            epsilon: 0.0,
            temperature: t_0 + p / (e * a * alpha),
            gamma_max: 0.0,
            convergence: Convergence::DIRECT,
        });
    }

    let (beta, n) = match closure {
        Closure::InitialLength => {
            let beta = invert_k((p / (e * i)).sqrt() * l / 4.0)?;
            (beta, p)
        }
        Closure::SpanCompatible => {
            let target = p / (e * a);
            let s = slenderness(geom);
            let beta = bisect_increasing(span_collapse_modulus(), |b| span_compatible_strain(b, s) - target);
            let ints = complete_integrals(beta);
            let span = 2.0 * ints.e - ints.k;
            (beta, 16.0 * e * i * span * span / (l * l))
        }
    };
    if !(n > 0.0) {
        return Err(ElasticaError::Numerical(format!("non-positive axial force {n:e} N")));
    }
    let k = complete_integrals(beta).k;
    let epsilon = 4.0 * k * (e * i / n).sqrt() / l - 1.0;
    let temperature = temperature_relation(geom, e, alpha, t_0, k, n);
    let gamma_max = deflection_relation(geom, beta, epsilon, alpha, temperature - t_0)?;
    Ok(ElasticaState {
        thermal_load: p,
        axial_force: n,
        beta,
        theta_max: 2.0 * beta.asin(),
        epsilon,
        temperature,
        gamma_max,
        convergence: Convergence::DIRECT,
    })
}

/// Tolerances for the temperature/property fixed-point loop.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PropertyIteration {
    /// °C
    pub tol_t: f64,
    pub max_iter: usize,
}

impl Default for PropertyIteration {
    fn default() -> Self {
        Self {
            tol_t: 0.01,
            max_iter: 200,
        }
    }
}

impl PropertyIteration {
    fn validate(&self) -> Result<(), ElasticaError> {
        check_positive("tol_T", self.tol_t)?;
        if self.max_iter == 0 {
            return Err(ElasticaError::Domain("max_iter must be at least 1".into()));
        }
        Ok(())
    }
}

/// Alternates between re-evaluating properties at the current temperature
/// and re-solving, until the temperature stops moving. After the update
/// changes sign once, steps are halved for the rest of the loop.
fn iterate_properties(
    mat: &MaterialModel,
    t_start: f64,
    opts: PropertyIteration,
    solve: impl Fn(f64, f64) -> Result<ElasticaState, ElasticaError>,
) -> Result<ElasticaState, ElasticaError> {
    let mut t = t_start;
    let mut relax = 1.0;
    let mut previous = 0.0_f64;
    let mut last = None;
    let mut last_update = f64::INFINITY;
    for iteration in 1..=opts.max_iter {
        let mut state = solve(mat.young_modulus(t), mat.cte(t))?;
        let update = state.temperature - t;
        if update.abs() < opts.tol_t {
            state.convergence = Convergence {
                converged: true,
                iterations: iteration,
            };
            return Ok(state);
        }
        if previous * update < 0.0 {
            relax = 0.5;
        }
        previous = update;
        last_update = update.abs();
        t += relax * update;
        state.convergence = Convergence {
            converged: false,
            iterations: iteration,
        };
        last = Some(state);
    }
    Err(ElasticaError::Convergence {
        iterations: opts.max_iter,
        last_update,
        state: Box::new(last.expect("max_iter >= 1")),
    })
}

/// Equilibrium at thermal load `p` with properties consistent with the
/// resulting temperature.
pub fn solve_state_tdep(
    geom: &BeamGeometry,
    mat: &MaterialModel,
    p: f64,
    opts: PropertyIteration,
    closure: Closure,
) -> Result<ElasticaState, ElasticaError> {
    opts.validate()?;
    let t_0 = mat.t_0;
    let solve = |e: f64, alpha: f64| solve_state(geom, e, alpha, t_0, p, closure);
    let first = solve(mat.young_modulus(t_0), mat.cte(t_0))?;
    iterate_properties(mat, first.temperature, opts, solve)
}

/// Equilibrium at a prescribed beam temperature. No iteration is needed:
/// the properties at `t` fix the thermal load directly.
pub fn solve_at_temperature(
    geom: &BeamGeometry,
    mat: &MaterialModel,
    t: f64,
    mode: PropertyMode,
    closure: Closure,
) -> Result<ElasticaState, ElasticaError> {
    if !(t > mat.t_0) {
        return Err(ElasticaError::Domain(format!(
            "temperature {t} °C must exceed the reference temperature {} °C",
            mat.t_0
        )));
    }
    let t_props = match mode {
        PropertyMode::Constant => mat.t_0,
        PropertyMode::TemperatureDependent => t,
    };
    let (e, alpha) = (mat.young_modulus(t_props), mat.cte(t_props));
    let p = e * geom.area() * alpha * (t - mat.t_0);
    solve_state(geom, e, alpha, mat.t_0, p, closure)
}

/// Post-buckled span-compatible equilibrium with midspan deflection `gamma`.
///
/// The shape depends on geometry alone, so only the temperature is iterated
/// in the temperature-dependent mode.
pub fn solve_at_deflection(
    geom: &BeamGeometry,
    mat: &MaterialModel,
    gamma: f64,
    mode: PropertyMode,
    opts: PropertyIteration,
) -> Result<ElasticaState, ElasticaError> {
    geom.validate()?;
    opts.validate()?;
    check_positive("deflection", gamma)?;
    let ratio = gamma / geom.length;
    let beta = bisect_increasing(span_collapse_modulus(), |b| {
        let ints = complete_integrals(b);
        b / (2.0 * ints.e - ints.k) - ratio
    });
    let strain = span_compatible_strain(beta, slenderness(geom));
    let t_0 = mat.t_0;
    let a = geom.area();
    let solve = |e: f64, alpha: f64| solve_state(geom, e, alpha, t_0, e * a * strain, Closure::SpanCompatible);
    match mode {
        PropertyMode::Constant => solve(mat.young_modulus(t_0), mat.cte(t_0)),
        PropertyMode::TemperatureDependent => iterate_properties(mat, t_0 + strain / mat.cte(t_0), opts, solve),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    #[default]
    Linear,
    Geometric,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepOptions {
    pub n: usize,
    pub spacing: Spacing,
    pub mode: PropertyMode,
    pub closure: Closure,
    pub iteration: PropertyIteration,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            n: 200,
            spacing: Spacing::Linear,
            mode: PropertyMode::TemperatureDependent,
            closure: Closure::SpanCompatible,
            iteration: PropertyIteration::default(),
        }
    }
}

#[derive(Debug)]
pub struct SweepPoint {
    pub thermal_load: f64,
    pub outcome: Result<ElasticaState, ElasticaError>,
}

impl SweepPoint {
    /// The state, including the last iterate of a non-converged point.
    pub fn state(&self) -> Option<&ElasticaState> {
        match &self.outcome {
            Ok(s) => Some(s),
            Err(ElasticaError::Convergence { state, .. }) => Some(state),
            Err(_) => None,
        }
    }

    pub fn is_clean(&self) -> bool {
        self.outcome.is_ok()
    }
}

fn load_grid(p_min: f64, p_max: f64, n: usize, spacing: Spacing) -> Vec<f64> {
    let last = (n - 1) as f64;
    (0..n)
        .map(|j| {
            if j == n - 1 {
                return p_max;
            }
            let f = j as f64 / last;
            match spacing {
                Spacing::Linear => p_min + f * (p_max - p_min),
                Spacing::Geometric => p_min * (p_max / p_min).powf(f),
            }
        })
        .collect()
}

/// Solves `n` equilibria at thermal loads spaced over `[p_min, p_max]`.
/// Per-point failures are kept in the output.
pub fn sweep(
    geom: &BeamGeometry,
    mat: &MaterialModel,
    p_min: f64,
    p_max: f64,
    opts: &SweepOptions,
) -> Result<Vec<SweepPoint>, ElasticaError> {
    if !(p_min.is_finite() && p_max.is_finite() && 0.0 < p_min && p_min < p_max) {
        return Err(ElasticaError::Domain(format!(
            "sweep range needs 0 < P_min < P_max, got P_min = {p_min}, P_max = {p_max}"
        )));
    }
    if opts.n < 2 {
        return Err(ElasticaError::Domain(format!("sweep needs n >= 2 points, got {}", opts.n)));
    }
    let t_0 = mat.t_0;
    Ok(load_grid(p_min, p_max, opts.n, opts.spacing)
        .into_iter()
        .map(|p| {
            let outcome = match opts.mode {
                PropertyMode::Constant => {
                    solve_state(geom, mat.young_modulus(t_0), mat.cte(t_0), t_0, p, opts.closure)
                }
                PropertyMode::TemperatureDependent => solve_state_tdep(geom, mat, p, opts.iteration, opts.closure),
            }
            .and_then(|s| {
                if s.beta > BETA_CAP {
                    Err(ElasticaError::Domain(format!(
                        "β = {} exceeds the model cap {BETA_CAP}",
                        s.beta
                    )))
                } else {
                    Ok(s)
                }
            });
            SweepPoint {
                thermal_load: p,
                outcome,
            }
        })
        .collect())
}

fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

/// Renders sweep points as CSV text (17 significant digits).
pub fn sweep_csv(points: &[SweepPoint]) -> String {
    let mut out = String::with_capacity(128 * (points.len() + 1));
    out.push_str(SWEEP_CSV_HEADER);
    out.push('\n');
    for pt in points {
        let row = match pt.state() {
            Some(s) => [
                fmt17(pt.thermal_load),
                fmt17(s.beta),
                fmt17(s.theta_max),
                fmt17(s.epsilon),
                fmt17(s.temperature),
                fmt17(s.gamma_max),
                (s.convergence.converged && pt.is_clean()).to_string(),
                s.convergence.iterations.to_string(),
            ],
            None => {
                let nan = fmt17(f64::NAN);
                [
                    fmt17(pt.thermal_load),
                    nan.clone(),
                    nan.clone(),
                    nan.clone(),
                    nan.clone(),
                    nan,
                    "false".into(),
                    "0".into(),
                ]
            }
        };
        let _ = writeln!(out, "{}", row.join(","));
    }
    out
}

pub fn write_sweep_csv(points: &[SweepPoint], mut w: impl io::Write) -> io::Result<()> {
    w.write_all(sweep_csv(points).as_bytes())
}
