//! Finite elements against the analytical elastica, constant properties.

use beambuckle::fem::NewtonTolerances;
use beambuckle::{
    critical_temperature_rise, solve_at_temperature, solve_path, BeamGeometry, Closure, FemModel, MaterialModel,
    PropertyMode,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let geom = BeamGeometry::reference_beam();
    let mat = MaterialModel::polysilicon_constant();
    let dt_cr = critical_temperature_rise(&geom, mat.young_modulus(mat.t_0), mat.cte(mat.t_0));
    let tol = NewtonTolerances::default();

    for n_elems in [32, 64, 128] {
        let model = FemModel::with_imperfection_ratio(geom, n_elems, &mat, 1e-4)?;
        let path = solve_path(&model, &mat, mat.t_0 + 3.0 * dt_cr, 300, &tol)?;
        print!("{n_elems:4} elements:");
        for factor in [1.1, 1.5, 2.0, 3.0] {
            let t = mat.t_0 + factor * dt_cr;
            let exact = solve_at_temperature(&geom, &mat, t, PropertyMode::Constant, Closure::SpanCompatible)?.gamma_max;
            let fem = path.deflection_at(t).expect("inside path");
            print!("  {factor}×ΔT_cr: {:+.2e}", fem / exact - 1.0);
        }
        println!();
    }
    Ok(())
}
