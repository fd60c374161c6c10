//! Geometrically nonlinear finite-element model of a heated clamped-clamped
//! beam.
//!
//! The beam is meshed with corotational Timoshenko elements (three DOFs per
//! node: axial and transverse displacement and section rotation). A uniform
//! temperature is raised in steps; at every step `E(T)` and `α(T)` are frozen
//! at the step temperature and the equilibrium is found by Newton–Raphson
//! starting from the previous step. A small transverse load stands in for
//! fabrication imperfections so that the path passes smoothly through the
//! buckling point.

mod banded;
mod element;

use std::fmt::Write as _;
use std::io;

use serde::{Deserialize, Serialize};

use crate::error::FemError;
use crate::geometry::BeamGeometry;
use crate::materials::MaterialModel;

use banded::BandedSym;
use element::{corotational, Section};

pub const DOF_PER_NODE: usize = 3;
/// Rectangular-section shear correction.
pub const DEFAULT_SHEAR_FACTOR: f64 = 5.0 / 6.0;
pub const DEFAULT_ELEMENTS: usize = 64;
/// Pre-buckling imperfection deflection as a fraction of the thickness.
pub const DEFAULT_IMPERFECTION_RATIO: f64 = 1e-3;

pub const PATH_CSV_HEADER: &str = "T_c,gamma_mid_m,axial_reaction_n,clamp_moment_nm,newton_iters,residual";

const HALF_BANDWIDTH: usize = 2 * DOF_PER_NODE - 1;
const MAX_HALVINGS: u32 = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct FemModel {
    pub geom: BeamGeometry,
    pub n_elems: usize,
    /// Uniform transverse imperfection load, N/m
    pub imperfection_q: f64,
    pub shear_factor: f64,
}

/// Uniform mesh with both end nodes fully clamped.
pub fn build_model(geom: BeamGeometry, n_elems: usize, imperfection_q: f64) -> Result<FemModel, FemError> {
    geom.validate().map_err(|e| FemError::Validation(e.to_string()))?;
    if n_elems < 4 || n_elems % 2 != 0 {
        return Err(FemError::Validation(format!(
            "n_elems must be even and at least 4 so a node sits at midspan, got {n_elems}"
        )));
    }
    if !(imperfection_q.is_finite() && imperfection_q >= 0.0) {
        return Err(FemError::Validation(format!(
            "imperfection load must be finite and non-negative, got {imperfection_q}"
        )));
    }
    Ok(FemModel {
        geom,
        n_elems,
        imperfection_q,
        shear_factor: DEFAULT_SHEAR_FACTOR,
    })
}

/// Uniform load that deflects the straight clamped-clamped beam by
/// `deflection` at midspan (bending plus shear):
/// `δ = q L⁴ / (384 E I) + q L² / (8 k_s G A)`.
pub fn imperfection_load_for(geom: &BeamGeometry, e: f64, nu: f64, shear_factor: f64, deflection: f64) -> f64 {
    let l = geom.length;
    let g = e / (2.0 * (1.0 + nu));
    let compliance = l.powi(4) / (384.0 * e * geom.second_moment()) + l * l / (8.0 * shear_factor * g * geom.area());
    deflection / compliance
}

impl FemModel {
    /// Model whose imperfection load produces a `T_0` midspan deflection of
    /// `ratio · thickness`.
    pub fn with_imperfection_ratio(
        geom: BeamGeometry,
        n_elems: usize,
        mat: &MaterialModel,
        ratio: f64,
    ) -> Result<Self, FemError> {
        let q = imperfection_load_for(
            &geom,
            mat.young_modulus(mat.t_0),
            mat.nu,
            DEFAULT_SHEAR_FACTOR,
            ratio * geom.thickness,
        );
        build_model(geom, n_elems, q)
    }

    pub fn n_nodes(&self) -> usize {
        self.n_elems + 1
    }

    pub fn n_dofs(&self) -> usize {
        DOF_PER_NODE * self.n_nodes()
    }

    pub fn mid_node(&self) -> usize {
        self.n_elems / 2
    }

    pub fn element_length(&self) -> f64 {
        self.geom.length / self.n_elems as f64
    }

    pub fn constrained_dofs(&self) -> Vec<usize> {
        let last = self.n_nodes() - 1;
        (0..DOF_PER_NODE)
            .chain((0..DOF_PER_NODE).map(|k| DOF_PER_NODE * last + k))
            .collect()
    }

    fn is_constrained(&self, dof: usize) -> bool {
        let node = dof / DOF_PER_NODE;
        node == 0 || node == self.n_elems
    }

    fn section(&self, mat: &MaterialModel, t: f64) -> Section {
        let e = mat.young_modulus(t);
        let g = e / (2.0 * (1.0 + mat.nu));
        let area = self.geom.area();
        Section {
            ea: e * area,
            ei: e * self.geom.second_moment(),
            ksga: self.shear_factor * g * area,
            thermal_strain: mat.thermal_strain(t),
        }
    }

    /// Consistent nodal loads of the imperfection (dead, transverse).
    pub fn external_forces(&self) -> Vec<f64> {
        let mut f = vec![0.0; self.n_dofs()];
        let le = self.element_length();
        let q = self.imperfection_q;
        for el in 0..self.n_elems {
            let a = DOF_PER_NODE * el;
            let b = a + DOF_PER_NODE;
            f[a + 1] += 0.5 * q * le;
            f[a + 2] += q * le * le / 12.0;
            f[b + 1] += 0.5 * q * le;
            f[b + 2] -= q * le * le / 12.0;
        }
        f
    }

    fn element_dofs(&self, el: usize, d: &[f64]) -> [f64; 6] {
        let a = DOF_PER_NODE * el;
        let mut out = [0.0; 6];
        out.copy_from_slice(&d[a..a + 6]);
        out
    }

    /// Assembled internal forces and (optionally) the banded tangent.
    fn assemble(&self, sec: &Section, d: &[f64], tangent: bool) -> (Vec<f64>, Option<BandedSym>) {
        let n = self.n_dofs();
        let mut f = vec![0.0; n];
        let mut k = tangent.then(|| BandedSym::zeros(n, HALF_BANDWIDTH));
        let le = self.element_length();
        for el in 0..self.n_elems {
            let a = DOF_PER_NODE * el;
            let resp = corotational(le, &self.element_dofs(el, d), sec);
            for i in 0..6 {
                f[a + i] += resp.force[i];
            }
            if let Some(k) = k.as_mut() {
                for i in 0..6 {
                    for j in 0..=i {
                        k.add(a + i, a + j, resp.tangent[i][j]);
                    }
                }
            }
        }
        (f, k)
    }

    /// Dense assembled tangent, for verification.
    pub fn tangent_matrix(&self, mat: &MaterialModel, t: f64, d: &[f64]) -> Vec<Vec<f64>> {
        let sec = self.section(mat, t);
        let (_, k) = self.assemble(&sec, d, true);
        let k = k.expect("tangent requested");
        let n = self.n_dofs();
        (0..n).map(|i| (0..n).map(|j| k.get(i, j)).collect()).collect()
    }

    pub fn internal_forces(&self, mat: &MaterialModel, t: f64, d: &[f64]) -> Vec<f64> {
        self.assemble(&self.section(mat, t), d, false).0
    }

    /// Norm of the out-of-balance force over the free DOFs.
    pub fn equilibrium_residual(&self, mat: &MaterialModel, t: f64, d: &[f64]) -> f64 {
        let f_int = self.internal_forces(mat, t, d);
        let f_ext = self.external_forces();
        (0..self.n_dofs())
            .filter(|&i| !self.is_constrained(i))
            .map(|i| (f_ext[i] - f_int[i]).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    fn reference_force(&self, sec: &Section, f_ext: &[f64]) -> f64 {
        let ext = f_ext.iter().map(|v| v * v).sum::<f64>().sqrt();
        let r = sec.ea * sec.thermal_strain.abs() + ext;
        if r > 0.0 {
            r
        } else {
            sec.ea * f64::EPSILON
        }
    }

    fn pinned_tangent(&self, sec: &Section, d: &[f64]) -> (Vec<f64>, BandedSym) {
        let (f_int, k) = self.assemble(sec, d, true);
        let mut k = k.expect("tangent requested");
        for dof in self.constrained_dofs() {
            k.pin(dof);
        }
        (f_int, k)
    }

    /// Newton–Raphson at a fixed temperature, starting from `d`.
    fn newton(
        &self,
        mat: &MaterialModel,
        t: f64,
        d: &mut [f64],
        f_ext: &[f64],
        tol: &NewtonTolerances,
    ) -> Result<NewtonOutcome, FemError> {
        let sec = self.section(mat, t);
        let f_ref = self.reference_force(&sec, f_ext);
        let du_tol = tol.tol_u * self.geom.length;
        let mut last_step = (f64::INFINITY, f64::INFINITY);
        for iter in 0..=tol.max_iter {
            let (f_int, mut k) = self.pinned_tangent(&sec, d);
            let mut rhs: Vec<f64> = f_ext.iter().zip(&f_int).map(|(e, i)| e - i).collect();
            for dof in self.constrained_dofs() {
                rhs[dof] = 0.0;
            }
            let res = rhs.iter().map(|v| v * v).sum::<f64>().sqrt();
            if !res.is_finite() {
                break;
            }
            let negative = k.factor().map_err(FemError::Singular)?;
            if iter > 0 && res <= tol.tol_r * f_ref && last_step.0 <= du_tol && last_step.1 <= tol.tol_u {
                return Ok(NewtonOutcome {
                    iterations: iter,
                    residual: res,
                    stable: negative == 0,
                });
            }
            if iter == tol.max_iter {
                break;
            }
            k.solve_factored(&mut rhs);
            last_step = increment_norms(&rhs);
            if !(last_step.0.is_finite() && last_step.1.is_finite()) || last_step.0 > self.geom.length {
                break;
            }
            for (di, delta) in d.iter_mut().zip(&rhs) {
                *di += delta;
            }
        }
        Err(FemError::Convergence {
            temperature: t,
            partial: Box::default(),
        })
    }

    /// Tangent predictor: `d + (dd/dT) ΔT` with `K dd/dT = −∂f_int/∂T`,
    /// the increment capped at 5% of the beam length.
    fn predict(&self, mat: &MaterialModel, d: &[f64], t_from: f64, t_to: f64) -> Option<Vec<f64>> {
        let (_, mut k) = self.pinned_tangent(&self.section(mat, t_from), d);
        k.factor().ok()?;
        let h = 1e-3;
        let fp = self.internal_forces(mat, t_from + h, d);
        let fm = self.internal_forces(mat, t_from - h, d);
        let dt = t_to - t_from;
        let mut delta: Vec<f64> = fp.iter().zip(&fm).map(|(p, m)| -(p - m) / (2.0 * h) * dt).collect();
        for dof in self.constrained_dofs() {
            delta[dof] = 0.0;
        }
        k.solve_factored(&mut delta);
        let (trans, _) = increment_norms(&delta);
        if !trans.is_finite() {
            return None;
        }
        let cap = 0.05 * self.geom.length;
        let scale = if trans > cap { cap / trans } else { 1.0 };
        Some(d.iter().zip(&delta).map(|(a, b)| a + scale * b).collect())
    }

    /// One temperature increment. With an imperfection load the new state
    /// must be stable and keep the sign of the midspan deflection, so the
    /// path cannot hop onto the complementary buckling branch.
    fn advance(
        &self,
        mat: &MaterialModel,
        d: &[f64],
        t_from: f64,
        t_to: f64,
        f_ext: &[f64],
        tol: &NewtonTolerances,
    ) -> Option<(Vec<f64>, NewtonOutcome)> {
        let mut trial = self.predict(mat, d, t_from, t_to).unwrap_or_else(|| d.to_vec());
        let out = self.newton(mat, t_to, &mut trial, f_ext, tol).ok()?;
        if self.imperfection_q > 0.0 {
            let mid = DOF_PER_NODE * self.mid_node() + 1;
            if !out.stable || d[mid] * trial[mid] < 0.0 {
                return None;
            }
        }
        Some((trial, out))
    }

    fn record(&self, mat: &MaterialModel, t: f64, d: &[f64], f_ext: &[f64], iters: usize, res: f64) -> FemStep {
        let f_int = self.internal_forces(mat, t, d);
        FemStep {
            temperature: t,
            midspan_deflection: d[DOF_PER_NODE * self.mid_node() + 1],
            axial_reaction: f_int[0] - f_ext[0],
            clamp_moment: f_int[2] - f_ext[2],
            newton_iters: iters,
            residual_norm: res,
            displacements: d.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct NewtonOutcome {
    iterations: usize,
    residual: f64,
    /// Tangent positive definite at the converged state.
    stable: bool,
}

/// Euclidean norms of the translational and rotational parts of an increment.
fn increment_norms(delta: &[f64]) -> (f64, f64) {
    let (mut trans, mut rot) = (0.0, 0.0);
    for (i, v) in delta.iter().enumerate() {
        if i % DOF_PER_NODE == 2 {
            rot += v * v;
        } else {
            trans += v * v;
        }
    }
    (f64::sqrt(trans), f64::sqrt(rot))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NewtonTolerances {
    /// Residual tolerance relative to the restrained thermal force.
    pub tol_r: f64,
    /// Increment tolerance: translations relative to the beam length,
    /// rotations in radians.
    pub tol_u: f64,
    pub max_iter: usize,
}

impl Default for NewtonTolerances {
    fn default() -> Self {
        Self {
            tol_r: 1e-8,
            tol_u: 1e-10,
            max_iter: 30,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FemStep {
    /// °C
    pub temperature: f64,
    /// Transverse displacement of the midspan node, m
    pub midspan_deflection: f64,
    /// Axial clamp reaction, N (positive in compression)
    pub axial_reaction: f64,
    /// Clamp reaction moment, N·m
    pub clamp_moment: f64,
    pub newton_iters: usize,
    pub residual_norm: f64,
    pub displacements: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct FemSolutionPath {
    pub steps: Vec<FemStep>,
}

impl FemSolutionPath {
    pub fn temperatures(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.temperature).collect()
    }

    pub fn deflections(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.midspan_deflection).collect()
    }

    /// Linear interpolation of the midspan deflection at temperature `t`.
    pub fn deflection_at(&self, t: f64) -> Option<f64> {
        let s = &self.steps;
        let hi = s.partition_point(|x| x.temperature < t);
        if hi == 0 {
            return (s.first()?.temperature == t).then(|| s[0].midspan_deflection);
        }
        if hi == s.len() {
            return None;
        }
        let (a, b) = (&s[hi - 1], &s[hi]);
        let w = (t - a.temperature) / (b.temperature - a.temperature);
        Some(a.midspan_deflection + w * (b.midspan_deflection - a.midspan_deflection))
    }

    /// First temperature at which the midspan deflection reaches `level`,
    /// interpolated between the bracketing steps.
    pub fn temperature_at_deflection(&self, level: f64) -> Option<f64> {
        let s = &self.steps;
        let i = s.iter().position(|x| x.midspan_deflection >= level)?;
        if i == 0 {
            return Some(s[0].temperature);
        }
        let (a, b) = (&s[i - 1], &s[i]);
        let w = (level - a.midspan_deflection) / (b.midspan_deflection - a.midspan_deflection);
        Some(a.temperature + w * (b.temperature - a.temperature))
    }

    pub fn csv(&self) -> String {
        let mut out = String::with_capacity(128 * (self.steps.len() + 1));
        out.push_str(PATH_CSV_HEADER);
        out.push('\n');
        for s in &self.steps {
            let _ = writeln!(
                out,
                "{:.16e},{:.16e},{:.16e},{:.16e},{},{:.16e}",
                s.temperature, s.midspan_deflection, s.axial_reaction, s.clamp_moment, s.newton_iters, s.residual_norm
            );
        }
        out
    }

    pub fn write_csv(&self, mut w: impl io::Write) -> io::Result<()> {
        w.write_all(self.csv().as_bytes())
    }
}

/// Follows the equilibrium path from `T_0` to `t_max` in `n_steps` equal
/// temperature increments. Step 0 (at `T_0`) is the pure imperfection state.
///
/// Each increment starts from a tangent predictor. A step that fails to
/// converge (or, with an imperfection load, lands on an unstable or
/// sign-reversed state) is retried as 2, 4, … up to 2⁸ sub-steps; the next
/// step starts again at full size.
pub fn solve_path(
    model: &FemModel,
    mat: &MaterialModel,
    t_max: f64,
    n_steps: usize,
    tol: &NewtonTolerances,
) -> Result<FemSolutionPath, FemError> {
    let t_0 = mat.t_0;
    if !t_max.is_finite() || t_max < t_0 {
        return Err(FemError::Validation(format!(
            "T_max ({t_max} °C) must not be below the reference temperature {t_0} °C"
        )));
    }
    if n_steps == 0 {
        return Err(FemError::Validation("n_steps must be at least 1".into()));
    }
    if !(tol.tol_r > 0.0 && tol.tol_u > 0.0 && tol.max_iter > 0) {
        return Err(FemError::Validation("Newton tolerances must be positive".into()));
    }

    let f_ext = model.external_forces();
    let mut d = vec![0.0; model.n_dofs()];
    let mut path = FemSolutionPath::default();

    let fail = |t: f64, path: &FemSolutionPath| FemError::Convergence {
        temperature: t,
        partial: Box::new(path.clone()),
    };

    let first = model
        .newton(mat, t_0, &mut d, &f_ext, tol)
        .map_err(|_| fail(t_0, &path))?;
    path.steps
        .push(model.record(mat, t_0, &d, &f_ext, first.iterations, first.residual));
    if t_max == t_0 {
        return Ok(path);
    }

    let dt = (t_max - t_0) / n_steps as f64;
    for i in 1..=n_steps {
        let t_prev = t_0 + (i - 1) as f64 * dt;
        let t_target = if i == n_steps { t_max } else { t_0 + i as f64 * dt };
        let mut done = None;
        'levels: for level in 0..=MAX_HALVINGS {
            let subs = 1usize << level;
            let mut state = d.clone();
            let mut t_from = t_prev;
            let mut last = None;
            for j in 1..=subs {
                let t = if j == subs {
                    t_target
                } else {
                    t_prev + (t_target - t_prev) * j as f64 / subs as f64
                };
                match model.advance(mat, &state, t_from, t, &f_ext, tol) {
                    Some((next, out)) => {
                        state = next;
                        t_from = t;
                        last = Some(out);
                    }
                    None => continue 'levels,
                }
            }
            done = Some((state, last.expect("at least one sub-step")));
            break;
        }
        let Some((state, out)) = done else {
            return Err(fail(t_target, &path));
        };
        d = state;
        path.steps
            .push(model.record(mat, t_target, &d, &f_ext, out.iterations, out.residual));
    }
    Ok(path)
}

/// Midspan deflection under a midspan point load with the geometric
/// nonlinearity switched off (small-displacement Timoshenko beam).
pub fn linear_static_check(model: &FemModel, e: f64, nu: f64, load: f64) -> Result<f64, FemError> {
    let g = e / (2.0 * (1.0 + nu));
    let sec = Section {
        ea: e * model.geom.area(),
        ei: e * model.geom.second_moment(),
        ksga: model.shear_factor * g * model.geom.area(),
        thermal_strain: 0.0,
    };
    let zero = vec![0.0; model.n_dofs()];
    let (_, k) = model.assemble(&sec, &zero, true);
    let mut k = k.expect("tangent requested");
    for dof in model.constrained_dofs() {
        k.pin(dof);
    }
    let mut rhs = vec![0.0; model.n_dofs()];
    let mid = DOF_PER_NODE * model.mid_node() + 1;
    rhs[mid] = load;
    k.factor_solve(&mut rhs).map_err(FemError::Singular)?;
    Ok(rhs[mid])
}

/// Largest discrepancy between the assembled tangent and central finite
/// differences of the internal force vector at displacement state `d`.
///
/// Entry `(i, j)` is scaled by `√(|K_ii| |K_jj|)`. Translations are perturbed
/// by `1e-7 · L`, rotations by `1e-7` rad.
pub fn tangent_consistency(model: &FemModel, mat: &MaterialModel, t: f64, d: &[f64]) -> f64 {
    let k = model.tangent_matrix(mat, t, d);
    let n = model.n_dofs();
    let mut worst = 0.0_f64;
    let mut probe = d.to_vec();
    for j in 0..n {
        let h = if j % DOF_PER_NODE == 2 {
            1e-7
        } else {
            1e-7 * model.geom.length
        };
        let orig = probe[j];
        probe[j] = orig + h;
        let fp = model.internal_forces(mat, t, &probe);
        probe[j] = orig - h;
        let fm = model.internal_forces(mat, t, &probe);
        probe[j] = orig;
        for i in 0..n {
            let scale = (k[i][i].abs() * k[j][j].abs()).sqrt();
            if scale == 0.0 {
                continue;
            }
            let fd = (fp[i] - fm[i]) / (2.0 * h);
            worst = worst.max((fd - k[i][j]).abs() / scale);
        }
    }
    worst
}
