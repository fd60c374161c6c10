//! Assembled tangent stiffness against finite differences.

use beambuckle::fem::NewtonTolerances;
use beambuckle::{solve_path, tangent_consistency, BeamGeometry, FemModel, MaterialModel};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let geom = BeamGeometry::reference_beam();
    let mat = MaterialModel::polysilicon();
    let model = FemModel::with_imperfection_ratio(geom, 16, &mat, 1e-3)?;

    let zero = vec![0.0; model.n_dofs()];
    println!("undeformed: {:.2e}", tangent_consistency(&model, &mat, mat.t_0, &zero));

    let path = solve_path(&model, &mat, 600.0, 120, &NewtonTolerances::default())?;
    for s in path.steps.iter().step_by(30) {
        println!(
            "T = {:6.1} °C, γ = {:7.4} µm: {:.2e}",
            s.temperature,
            s.midspan_deflection * 1e6,
            tangent_consistency(&model, &mat, s.temperature, &s.displacements)
        );
    }
    Ok(())
}
