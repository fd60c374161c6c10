mod common;

use std::f64::consts::FRAC_PI_2;

use beambuckle::{elliptic_e, elliptic_k, invert_k};
use common::{e_quadrature, k_quadrature, rel};
use proptest::prelude::*;

#[test]
fn k_matches_quadrature_on_grid() {
    for i in 0..200 {
        let k = 0.999 * i as f64 / 199.0;
        let got = elliptic_k(k).unwrap();
        assert!(rel(got, k_quadrature(k)) < 1e-10, "k = {k}");
    }
}

#[test]
fn e_matches_quadrature_on_grid() {
    for i in 0..200 {
        let k = 0.999 * i as f64 / 199.0;
        assert!(rel(elliptic_e(k).unwrap(), e_quadrature(k)) < 1e-10, "k = {k}");
    }
}

#[test]
fn frozen_reference_values() {
    // Closed forms: K(1/√2) = Γ(1/4)² / (4√π), E(0) = K(0) = π/2.
    let gamma_quarter = 3.625_609_908_221_908_3_f64;
    let k_half_sqrt2 = gamma_quarter * gamma_quarter / (4.0 * std::f64::consts::PI.sqrt());
    assert!(rel(elliptic_k(std::f64::consts::FRAC_1_SQRT_2).unwrap(), k_half_sqrt2) < 1e-14);
    assert_eq!(elliptic_k(0.0).unwrap(), FRAC_PI_2);
    assert_eq!(elliptic_e(0.0).unwrap(), FRAC_PI_2);
}

proptest! {
    #[test]
    fn legendre_relation(k in 0.01f64..0.99) {
        // E K' + E' K − K K' = π/2 with primes at the complementary modulus.
        let kc = (1.0 - k * k).sqrt();
        let (kk, ee) = (elliptic_k(k).unwrap(), elliptic_e(k).unwrap());
        let (kp, ep) = (elliptic_k(kc).unwrap(), elliptic_e(kc).unwrap());
        prop_assert!(((ee * kp + ep * kk - kk * kp) - FRAC_PI_2).abs() < 1e-13);
    }

    #[test]
    fn k_increasing_e_decreasing(a in 0.0f64..0.999, b in 0.0f64..0.999) {
        prop_assume!(a < b);
        prop_assert!(elliptic_k(a).unwrap() <= elliptic_k(b).unwrap());
        prop_assert!(elliptic_e(a).unwrap() >= elliptic_e(b).unwrap());
        prop_assert!(elliptic_e(b).unwrap() <= FRAC_PI_2 && elliptic_k(b).unwrap() >= FRAC_PI_2);
    }

    #[test]
    fn inverse_round_trip(k in 0.001f64..0.9999) {
        let back = invert_k(elliptic_k(k).unwrap()).unwrap();
        prop_assert!((back - k).abs() < 1e-11 * (1.0 + 1.0 / (1.0 - k)));
    }
}
