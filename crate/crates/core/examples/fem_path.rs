//! Corotational finite-element path under temperature stepping.
//!
//! cargo run --release --example fem_path [-- out.csv]

use beambuckle::fem::{NewtonTolerances, DEFAULT_IMPERFECTION_RATIO};
use beambuckle::{critical_temperature, solve_path, BeamGeometry, FemModel, MaterialModel};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let geom = BeamGeometry::reference_beam();
    let mat = MaterialModel::polysilicon();
    let model = FemModel::with_imperfection_ratio(geom, 64, &mat, DEFAULT_IMPERFECTION_RATIO)?;
    let path = solve_path(&model, &mat, 900.0, 440, &NewtonTolerances::default())?;

    println!("T_cr (analytical) = {:.2} °C", critical_temperature(&geom, &mat));
    println!("{:>8} {:>12} {:>14} {:>6}", "T [°C]", "γ_mid [µm]", "N [µN]", "iters");
    for s in path.steps.iter().step_by(40) {
        println!(
            "{:8.1} {:12.4} {:14.4} {:6}",
            s.temperature,
            s.midspan_deflection * 1e6,
            s.axial_reaction * 1e6,
            s.newton_iters
        );
    }
    if let Some(out) = std::env::args().nth(1) {
        std::fs::write(&out, path.csv())?;
        println!("wrote {out}");
    }
    Ok(())
}
