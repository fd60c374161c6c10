//! Load a material file and tabulate E(T) and α(T).
//!
//! cargo run --example material_properties [-- path/to/file.mat]

use beambuckle::{load_material, MaterialModel};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/polysilicon.mat").to_string());
    let mat = load_material(&path)?;
    println!("{path}");
    println!("{:>8} {:>10} {:>12} {:>14}", "T [°C]", "E [GPa]", "α [1e-6/°C]", "ε_th [1e-3]");
    for t in (0..=9).map(|i| mat.t_0 + 100.0 * i as f64) {
        println!(
            "{t:8.0} {:10.2} {:12.3} {:14.4}",
            mat.young_modulus(t) * 1e-9,
            mat.cte(t) * 1e6,
            mat.thermal_strain(t) * 1e3
        );
    }

    // Round trip through the text format.
    let again = beambuckle::materials::parse_material(&mat.to_file_string(), "inline".as_ref())?;
    assert_eq!(again, mat);

    let frozen = MaterialModel::polysilicon().frozen_at(20.0);
    println!("\nfrozen at 20 °C: constant = {}", frozen.is_constant());
    Ok(())
}
