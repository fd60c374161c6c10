//! Complete elliptic integrals of the first and second kind.
//!
//! Both are evaluated with the arithmetic-geometric mean. The argument is
//! the modulus `k` (not the parameter `m = k²`):
//!
//! ```text
//! K(k) = ∫₀^{π/2} dφ / √(1 − k² sin² φ)
//! E(k) = ∫₀^{π/2} √(1 − k² sin² φ) dφ
//! ```

use std::f64::consts::FRAC_PI_2;

use crate::error::ElasticaError;

const AGM_MAX_ITER: usize = 64;

/// K, E and K − E (the last without cancellation) for `0 ≤ k < 1`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct CompleteIntegrals {
    pub k: f64,
    pub e: f64,
    pub k_minus_e: f64,
}

pub(crate) fn complete_integrals(modulus: f64) -> CompleteIntegrals {
    // K − E = K · Σ 2^{n−1} c_n²  with c_0 = k, c_{n+1} = (a_n − b_n)/2
    let mut a = 1.0_f64;
    let mut b = ((1.0 - modulus) * (1.0 + modulus)).sqrt();
    let mut weight = 0.5;
    let mut sum = weight * modulus * modulus;
    for _ in 0..AGM_MAX_ITER {
        let c = 0.5 * (a - b);
        if c.abs() <= f64::EPSILON * a * 0.5 {
            break;
        }
        let next_a = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next_a;
        weight *= 2.0;
        sum += weight * c * c;
    }
    let k = FRAC_PI_2 / a;
    let k_minus_e = k * sum;
    CompleteIntegrals {
        k,
        e: k - k_minus_e,
        k_minus_e,
    }
}

fn check_modulus(modulus: f64) -> Result<(), ElasticaError> {
    if !(0.0..1.0).contains(&modulus) {
        return Err(ElasticaError::Domain(format!(
            "elliptic modulus must satisfy 0 <= k < 1, got {modulus}"
        )));
    }
    Ok(())
}

/// Complete elliptic integral of the first kind, `K(k) = π / (2·AGM(1, √(1−k²)))`.
pub fn elliptic_k(modulus: f64) -> Result<f64, ElasticaError> {
    check_modulus(modulus)?;
    Ok(complete_integrals(modulus).k)
}

/// Complete elliptic integral of the second kind.
pub fn elliptic_e(modulus: f64) -> Result<f64, ElasticaError> {
    check_modulus(modulus)?;
    Ok(complete_integrals(modulus).e)
}

/// dK/dk = E / (k (1 − k²)) − K / k
fn elliptic_k_derivative(modulus: f64, ints: &CompleteIntegrals) -> f64 {
    if modulus == 0.0 {
        return 0.0;
    }
    let kp2 = (1.0 - modulus) * (1.0 + modulus);
    // E/(k k'²) − K/k = (E − K k'²)/(k k'²) = (k² K − (K − E))/(k k'²)
    (modulus * modulus * ints.k - ints.k_minus_e) / (modulus * kp2)
}

/// Largest modulus below one; K is finite there (≈ 19.4).
const MODULUS_CEILING: f64 = 1.0 - f64::EPSILON / 2.0;

/// Solves `K(k) = target` for the modulus `k ∈ [0, 1)`.
///
/// K is strictly increasing on `[0, 1)`, so the root is unique. Newton steps
/// are taken inside a shrinking bracket and replaced by bisection whenever
/// they leave it.
pub fn invert_k(target: f64) -> Result<f64, ElasticaError> {
    if !target.is_finite() || target < FRAC_PI_2 - 1e-15 {
        return Err(ElasticaError::Domain(format!(
            "K(k) >= π/2 for every modulus; no solution for target {target}"
        )));
    }
    if target <= FRAC_PI_2 {
        return Ok(0.0);
    }
    let k_max = complete_integrals(MODULUS_CEILING).k;
    if target > k_max {
        return Err(ElasticaError::Domain(format!(
            "target {target} exceeds K at the largest representable modulus ({k_max})"
        )));
    }

    let (mut lo, mut hi) = (0.0_f64, MODULUS_CEILING);
    // small-k series K ≈ π/2 (1 + k²/4) gives a good start
    let mut x = (4.0 * (target / FRAC_PI_2 - 1.0)).sqrt().min(0.9);
    for _ in 0..200 {
        let ints = complete_integrals(x);
        let f = ints.k - target;
        if f.abs() <= 1e-15 * target {
            return Ok(x);
        }
        if f < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        if hi - lo <= f64::EPSILON * hi {
            return Ok(0.5 * (lo + hi));
        }
        let slope = elliptic_k_derivative(x, &ints);
        let newton = x - f / slope;
        x = if slope > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    // reference values from arbitrary-precision quadrature
    const K_HALF: f64 = 1.685750354812596;
    const K_0999999: f64 = 7.94747977354244;

    #[test]
    fn k_at_zero_is_half_pi() {
        assert_eq!(elliptic_k(0.0).unwrap(), PI / 2.0);
        assert_eq!(elliptic_e(0.0).unwrap(), PI / 2.0);
    }

    #[test]
    fn k_reference_values() {
        assert!((elliptic_k(0.5).unwrap() - K_HALF).abs() / K_HALF < 1e-14);
        let k = elliptic_k(0.999999).unwrap();
        assert!(k.is_finite());
        assert!((k - K_0999999).abs() / K_0999999 < 1e-12);
    }

    #[test]
    fn e_reference_value() {
        // E(k = 0.5)
        let e = elliptic_e(0.5).unwrap();
        assert!((e - 1.467462209339427).abs() < 1e-14);
    }

    #[test]
    fn domain_errors() {
        assert!(elliptic_k(-0.1).is_err());
        assert!(elliptic_k(1.0).is_err());
        assert!(invert_k(1.0).is_err());
    }

    #[test]
    fn invert_round_trip() {
        assert_eq!(invert_k(PI / 2.0).unwrap(), 0.0);
        let beta = invert_k(elliptic_k(0.5).unwrap()).unwrap();
        assert!((beta - 0.5).abs() < 1e-10);
        for &b in &[1e-6, 0.01, 0.3, 0.9, 0.99, 0.999, 0.999999] {
            let t = elliptic_k(b).unwrap();
            let back = invert_k(t).unwrap();
            let rel = (elliptic_k(back).unwrap() - t).abs() / t;
            assert!(rel <= 1e-12, "b={b} back={back} rel={rel}");
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        for &b in &[0.1, 0.5, 0.9] {
            let h = 1e-6;
            let fd = (elliptic_k(b + h).unwrap() - elliptic_k(b - h).unwrap()) / (2.0 * h);
            let an = elliptic_k_derivative(b, &complete_integrals(b));
            assert!((fd - an).abs() / an < 1e-7, "b={b} fd={fd} an={an}");
        }
    }
}
