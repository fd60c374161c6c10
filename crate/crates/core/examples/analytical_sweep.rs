//! Analytical post-buckling curves of the reference beam with constant and
//! temperature-dependent properties.

use beambuckle::elastica::{sweep_csv, Spacing};
use beambuckle::{critical_load, critical_temperature, sweep, BeamGeometry, MaterialModel, PropertyMode, SweepOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let geom = BeamGeometry::reference_beam();
    let mat = MaterialModel::polysilicon();
    let p_cr = critical_load(&geom, mat.young_modulus(mat.t_0));
    println!("P_cr = {:.4e} N, T_cr = {:.3} °C", p_cr, critical_temperature(&geom, &mat));

    for mode in [PropertyMode::Constant, PropertyMode::TemperatureDependent] {
        let opts = SweepOptions {
            n: 12,
            spacing: Spacing::Geometric,
            mode,
            ..SweepOptions::default()
        };
        let points = sweep(&geom, &mat, 0.5 * p_cr, 55.0 * p_cr, &opts)?;
        println!("\n{} properties", mode.as_str());
        println!("{:>8} {:>10} {:>10} {:>12}", "P/P_cr", "T [°C]", "β", "γ_max [µm]");
        for pt in &points {
            let s = pt.state().expect("reference sweep converges");
            println!(
                "{:8.2} {:10.2} {:10.5} {:12.4}",
                pt.thermal_load / p_cr,
                s.temperature,
                s.beta,
                s.gamma_max * 1e6
            );
        }
        if mode == PropertyMode::TemperatureDependent {
            let csv = sweep_csv(&points);
            println!("\nCSV: {} lines, header `{}`", csv.lines().count(), csv.lines().next().unwrap_or(""));
        }
    }
    Ok(())
}
