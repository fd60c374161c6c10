//! Thermal post-buckling of clamped-clamped micro beams whose Young's
//! modulus and thermal-expansion coefficient depend on temperature.
//!
//! * [`materials`]: `E(T)` and `α(T)` laws and the material file format.
//! * [`elastica`]: analytical elliptic-integral solution, with a fixed-point
//!   loop that keeps the properties consistent with the beam temperature.
//! * [`fem`]: corotational Timoshenko finite elements with temperature
//!   stepping and an imperfection load.
//! * [`compare`]: experimental curves, RMS deviation and overlay export.
//! * [`cli`]: the `beambuckle` command-line front end.

pub mod cli;
pub mod compare;
pub mod elastica;
pub mod elliptic;
pub mod error;
pub mod fem;
mod fsutil;
pub mod geometry;
pub mod materials;

pub use elastica::{
    critical_load, critical_temperature, critical_temperature_rise, solve_at_deflection, solve_at_temperature,
    solve_state, solve_state_tdep, sweep, Closure, ElasticaState, PropertyIteration, PropertyMode, SweepOptions,
};
pub use elliptic::{elliptic_e, elliptic_k, invert_k};
pub use error::{CompareError, ElasticaError, FemError, MaterialError};
pub use fem::{build_model, linear_static_check, solve_path, tangent_consistency, FemModel, FemSolutionPath};
pub use geometry::{BeamGeometry, BendingAxis};
pub use materials::{load_material, CteKnot, MaterialModel};
