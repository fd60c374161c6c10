//! Fixed-point iteration between beam temperature and material properties,
//! and the resulting shift of the deflection curve to lower temperatures.

use beambuckle::{
    critical_load, solve_at_deflection, solve_state_tdep, BeamGeometry, Closure, MaterialModel, PropertyIteration,
    PropertyMode,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let geom = BeamGeometry::reference_beam();
    let mat = MaterialModel::polysilicon();
    let p_cr = critical_load(&geom, mat.young_modulus(mat.t_0));
    let opts = PropertyIteration::default();

    println!("{:>8} {:>10} {:>6} {:>12}", "P/P_cr", "T [°C]", "iters", "γ_max [µm]");
    for ratio in [1.01, 2.0, 5.0, 20.0, 50.0] {
        let s = solve_state_tdep(&geom, &mat, ratio * p_cr, opts, Closure::SpanCompatible)?;
        println!(
            "{ratio:8.2} {:10.3} {:6} {:12.4}",
            s.temperature,
            s.convergence.iterations,
            s.gamma_max * 1e6
        );
    }

    println!("\n{:>12} {:>12} {:>12}", "γ [µm]", "T_const", "T_tdep");
    for gamma in [0.5e-6, 2e-6, 5e-6, 8e-6] {
        let c = solve_at_deflection(&geom, &mat, gamma, PropertyMode::Constant, opts)?;
        let t = solve_at_deflection(&geom, &mat, gamma, PropertyMode::TemperatureDependent, opts)?;
        println!("{:12.2} {:12.2} {:12.2}", gamma * 1e6, c.temperature, t.temperature);
    }
    Ok(())
}
