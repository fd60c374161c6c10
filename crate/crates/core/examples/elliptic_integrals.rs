//! Complete elliptic integrals and the inverse of K.

use beambuckle::{elliptic_e, elliptic_k, invert_k};

fn main() -> Result<(), beambuckle::ElasticaError> {
    println!("{:>10} {:>20} {:>20}", "k", "K(k)", "E(k)");
    for k in [0.0, 0.1, 0.5, 0.7071067811865476, 0.9, 0.99, 0.999999] {
        println!("{k:10.6} {:20.15} {:20.15}", elliptic_k(k)?, elliptic_e(k)?);
    }
    for target in [1.6, 2.0, 3.0, 5.0] {
        let k = invert_k(target)?;
        println!("K⁻¹({target}) = {k:.15}  (check {:.3e})", elliptic_k(k)? - target);
    }
    Ok(())
}
