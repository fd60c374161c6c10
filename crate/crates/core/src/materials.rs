//! Temperature-dependent constitutive laws for polysilicon.
//!
//! Young's modulus follows a linear softening law clamped from below, and the
//! thermal-expansion coefficient is a piecewise-linear table of *secant*
//! values referenced to the strain-free temperature `T_0`, so the free
//! thermal strain at `T` is `cte(T) * (T - T_0)`.
//!
//! Material files are plain text:
//!
//! ```text
//! # comment
//! E_s_pa = 150e9
//! T_s_c = 20
//! c_E_pa_per_c = 0.04e9
//! E_min_pa = 1e9          # optional
//! nu = 0.22
//! T_0_c = 20
//!
//! [cte]
//! temperature_c,cte_per_c
//! 20,21.6e-6
//! 450,21.6e-6
//! ```
//!
//! Instead of the `[cte]` block a file may name a sibling table with
//! `cte_file = table.csv` (same header, resolved relative to the material
//! file).

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::MaterialError;

pub const DEFAULT_E_MIN_PA: f64 = 1.0e9;

/// CTE table header shared by inline blocks and sibling files.
pub const CTE_HEADER: &str = "temperature_c,cte_per_c";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CteKnot {
    /// °C
    pub temperature: f64,
    /// Secant expansion coefficient, 1/°C
    pub cte: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaterialModel {
    /// Young's modulus at `t_s`, Pa
    pub e_s: f64,
    /// Reference temperature of the modulus law, °C
    pub t_s: f64,
    /// Modulus degradation slope, Pa/°C (positive softens with T)
    pub c_e: f64,
    /// Floor for E(T), Pa
    pub e_min: f64,
    pub nu: f64,
    pub cte_table: Vec<CteKnot>,
    /// Strain-free reference temperature, °C
    pub t_0: f64,
}

impl MaterialModel {
    pub fn new(
        e_s: f64,
        t_s: f64,
        c_e: f64,
        e_min: f64,
        nu: f64,
        cte_table: Vec<CteKnot>,
        t_0: f64,
    ) -> Result<Self, MaterialError> {
        let model = Self {
            e_s,
            t_s,
            c_e,
            e_min,
            nu,
            cte_table,
            t_0,
        };
        model.validate()?;
        Ok(model)
    }

    /// Temperature-independent material: `c_E = 0` and a single CTE knot.
    pub fn constant(e: f64, cte: f64, nu: f64, t_0: f64) -> Result<Self, MaterialError> {
        Self::new(
            e,
            t_0,
            0.0,
            DEFAULT_E_MIN_PA.min(e),
            nu,
            vec![CteKnot {
                temperature: t_0,
                cte,
            }],
            t_0,
        )
    }

    /// Heavily doped polysilicon at 20 °C: E = 150 GPa, ν = 0.22,
    /// α = 21.6e-6 /°C, modulus slope 0.04 GPa/°C.
    ///
    /// The CTE table is illustrative only (flat to 450 °C, then rising
    /// linearly to 30e-6 /°C at 900 °C). Supply a calibrated table for
    /// quantitative work.
    pub fn polysilicon() -> Self {
        Self {
            e_s: 150.0e9,
            t_s: 20.0,
            c_e: 0.04e9,
            e_min: DEFAULT_E_MIN_PA,
            nu: 0.22,
            cte_table: vec![
                CteKnot {
                    temperature: 20.0,
                    cte: 21.6e-6,
                },
                CteKnot {
                    temperature: 450.0,
                    cte: 21.6e-6,
                },
                CteKnot {
                    temperature: 900.0,
                    cte: 30.0e-6,
                },
            ],
            t_0: 20.0,
        }
    }

    /// Same as [`MaterialModel::polysilicon`] with its properties frozen at `T_0`.
    pub fn polysilicon_constant() -> Self {
        let poly = Self::polysilicon();
        poly.frozen_at(poly.t_0)
    }

    /// Constant-property copy evaluated at `t`.
    pub fn frozen_at(&self, t: f64) -> Self {
        let e = self.young_modulus(t);
        Self {
            e_s: e,
            t_s: self.t_0,
            c_e: 0.0,
            e_min: self.e_min.min(e),
            nu: self.nu,
            cte_table: vec![CteKnot {
                temperature: self.t_0,
                cte: self.cte(t),
            }],
            t_0: self.t_0,
        }
    }

    pub fn validate(&self) -> Result<(), MaterialError> {
        let bad = |msg: String| Err(MaterialError::Validation(msg));
        let finite = [
            ("E_s_pa", self.e_s),
            ("T_s_c", self.t_s),
            ("c_E_pa_per_c", self.c_e),
            ("E_min_pa", self.e_min),
            ("nu", self.nu),
            ("T_0_c", self.t_0),
        ];
        if let Some((key, _)) = finite.iter().find(|(_, v)| !v.is_finite()) {
            return bad(format!("{key} must be finite"));
        }
        if self.e_s <= 0.0 {
            return bad(format!("E_s_pa must be positive, got {}", self.e_s));
        }
        if self.e_min <= 0.0 {
            return bad(format!("E_min_pa must be positive, got {}", self.e_min));
        }
        if self.e_min > self.e_s {
            return bad(format!(
                "E_min_pa ({}) must not exceed E_s_pa ({})",
                self.e_min, self.e_s
            ));
        }
        if !(self.nu > 0.0 && self.nu < 0.5) {
            return bad(format!("nu must lie in (0, 0.5), got {}", self.nu));
        }
        if self.cte_table.is_empty() {
            return bad("CTE table needs at least one knot".into());
        }
        for (i, knot) in self.cte_table.iter().enumerate() {
            let row = i + 1;
            if !knot.temperature.is_finite() || !knot.cte.is_finite() {
                return bad(format!("CTE table row {row}: non-finite value"));
            }
            if knot.cte <= 0.0 {
                return bad(format!(
                    "CTE table row {row}: cte_per_c must be positive, got {}",
                    knot.cte
                ));
            }
            if i > 0 && knot.temperature <= self.cte_table[i - 1].temperature {
                return bad(format!(
                    "CTE table row {row}: temperature_c {} is not above the previous row",
                    knot.temperature
                ));
            }
        }
        Ok(())
    }

    /// E(T) = max(E_s − c_E·(T − T_s), E_min).
    pub fn young_modulus(&self, t: f64) -> f64 {
        (self.e_s - self.c_e * (t - self.t_s)).max(self.e_min)
    }

    /// Secant CTE at `t`: linear between knots, clamped outside the table.
    pub fn cte(&self, t: f64) -> f64 {
        let knots = &self.cte_table;
        let first = knots[0];
        let last = knots[knots.len() - 1];
        if t <= first.temperature {
            return first.cte;
        }
        if t >= last.temperature {
            return last.cte;
        }
        let hi = knots.partition_point(|k| k.temperature <= t);
        let (a, b) = (knots[hi - 1], knots[hi]);
        let w = (t - a.temperature) / (b.temperature - a.temperature);
        a.cte + w * (b.cte - a.cte)
    }

    pub fn shear_modulus(&self, t: f64) -> f64 {
        self.young_modulus(t) / (2.0 * (1.0 + self.nu))
    }

    /// Free thermal strain `cte(T)·(T − T_0)`.
    pub fn thermal_strain(&self, t: f64) -> f64 {
        self.cte(t) * (t - self.t_0)
    }

    pub fn is_constant(&self) -> bool {
        self.c_e == 0.0 && self.cte_table.len() == 1
    }

    /// Serializes to the material file format with an inline `[cte]` block.
    /// Every value is written in shortest round-trip form.
    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "E_s_pa = {:e}", self.e_s);
        let _ = writeln!(out, "T_s_c = {:e}", self.t_s);
        let _ = writeln!(out, "c_E_pa_per_c = {:e}", self.c_e);
        let _ = writeln!(out, "E_min_pa = {:e}", self.e_min);
        let _ = writeln!(out, "nu = {:e}", self.nu);
        let _ = writeln!(out, "T_0_c = {:e}", self.t_0);
        out.push_str("\n[cte]\n");
        out.push_str(CTE_HEADER);
        out.push('\n');
        for k in &self.cte_table {
            let _ = writeln!(out, "{:e},{:e}", k.temperature, k.cte);
        }
        out
    }
}

impl Default for MaterialModel {
    fn default() -> Self {
        Self::polysilicon()
    }
}

pub fn load_material(path: impl AsRef<Path>) -> Result<MaterialModel, MaterialError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| MaterialError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_material(&text, path)
}

/// Parses material file text. `origin` is used for error messages and to
/// resolve a relative `cte_file`.
pub fn parse_material(text: &str, origin: &Path) -> Result<MaterialModel, MaterialError> {
    let parse_err = |line: usize, message: String| MaterialError::Parse {
        path: origin.to_path_buf(),
        line,
        message,
    };

    let mut e_s = None;
    let mut t_s = None;
    let mut c_e = None;
    let mut e_min = None;
    let mut nu = None;
    let mut t_0 = None;
    let mut cte_file: Option<String> = None;
    let mut cte_block: Option<Vec<CteKnot>> = None;

    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, strip_comment(l)));
    while let Some((line_no, line)) = lines.next() {
        if line.is_empty() {
            continue;
        }
        if line == "[cte]" {
            let rest: Vec<(usize, &str)> = lines.by_ref().filter(|(_, l)| !l.is_empty()).collect();
            cte_block = Some(parse_cte_rows(&rest, origin)?);
            break;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| parse_err(line_no, format!("expected `key = value`, got `{line}`")))?;
        let key = key.trim();
        let value = value.trim();
        if key == "cte_file" {
            cte_file = Some(value.trim_matches('"').to_string());
            continue;
        }
        let slot = match key {
            "E_s_pa" => &mut e_s,
            "T_s_c" => &mut t_s,
            "c_E_pa_per_c" => &mut c_e,
            "E_min_pa" => &mut e_min,
            "nu" => &mut nu,
            "T_0_c" => &mut t_0,
            other => return Err(parse_err(line_no, format!("unknown key `{other}`"))),
        };
        let v: f64 = value
            .parse()
            .map_err(|_| parse_err(line_no, format!("`{key}`: cannot parse `{value}` as a number")))?;
        *slot = Some(v);
    }

    let knots = match (cte_block, cte_file) {
        (Some(_), Some(_)) => {
            return Err(MaterialError::Validation(
                "both a [cte] block and cte_file are given".into(),
            ))
        }
        (Some(k), None) => k,
        (None, Some(file)) => {
            let table_path = resolve_relative(origin, &file);
            let table = fs::read_to_string(&table_path).map_err(|source| MaterialError::Io {
                path: table_path.clone(),
                source,
            })?;
            let rows: Vec<(usize, &str)> = table
                .lines()
                .enumerate()
                .map(|(i, l)| (i + 1, strip_comment(l)))
                .filter(|(_, l)| !l.is_empty())
                .collect();
            parse_cte_rows(&rows, &table_path)?
        }
        (None, None) => {
            return Err(MaterialError::Validation(
                "missing CTE table: add a [cte] block or cte_file".into(),
            ))
        }
    };

    let required = |v: Option<f64>, key: &str| {
        v.ok_or_else(|| MaterialError::Validation(format!("missing required key `{key}`")))
    };
    MaterialModel::new(
        required(e_s, "E_s_pa")?,
        required(t_s, "T_s_c")?,
        required(c_e, "c_E_pa_per_c")?,
        e_min.unwrap_or(DEFAULT_E_MIN_PA),
        required(nu, "nu")?,
        knots,
        required(t_0, "T_0_c")?,
    )
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => line[..i].trim(),
        None => line.trim(),
    }
}

fn resolve_relative(origin: &Path, file: &str) -> PathBuf {
    let p = Path::new(file);
    if p.is_absolute() {
        return p.to_path_buf();
    }
    origin
        .parent()
        .map(|dir| dir.join(p))
        .unwrap_or_else(|| p.to_path_buf())
}

/// Rows are `(line number, trimmed text)`; the first must be the header.
fn parse_cte_rows(rows: &[(usize, &str)], origin: &Path) -> Result<Vec<CteKnot>, MaterialError> {
    let parse_err = |line: usize, message: String| MaterialError::Parse {
        path: origin.to_path_buf(),
        line,
        message,
    };
    let Some(&(header_line, header)) = rows.first() else {
        return Err(parse_err(0, "empty CTE table".into()));
    };
    let normalized: String = header.chars().filter(|c| !c.is_whitespace()).collect();
    if normalized != CTE_HEADER {
        return Err(parse_err(
            header_line,
            format!("CTE table header must be `{CTE_HEADER}`, got `{header}`"),
        ));
    }
    rows[1..]
        .iter()
        .enumerate()
        .map(|(i, &(line, text))| {
            let fields: Vec<&str> = text.split(',').map(str::trim).collect();
            if fields.len() != 2 {
                return Err(parse_err(
                    line,
                    format!("CTE row {}: expected 2 columns, got {}", i + 1, fields.len()),
                ));
            }
            let num = |s: &str| {
                s.parse::<f64>()
                    .map_err(|_| parse_err(line, format!("CTE row {}: cannot parse `{s}`", i + 1)))
            };
            Ok(CteKnot {
                temperature: num(fields[0])?,
                cte: num(fields[1])?,
            })
        })
        .collect()
}
