//! Independent reference computations shared by the integration tests.

#![allow(dead_code)]

use std::f64::consts::FRAC_PI_2;

/// Adaptive Simpson quadrature with Richardson correction.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
    let (fa, fb) = (f(a), f(b));
    let fm = f(0.5 * (a + b));
    recurse(f, a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tol, 50)
}

/// `1 − k² sin²θ` written as `cos²θ + k′² sin²θ` to keep it accurate
/// near θ = π/2 when k → 1.
fn delta_sq(k: f64, th: f64) -> f64 {
    let kc2 = (1.0 - k) * (1.0 + k);
    let (s, c) = th.sin_cos();
    c * c + kc2 * s * s
}

/// K(k) = ∫₀^{π/2} dθ / √(1 − k² sin²θ) by quadrature.
pub fn k_quadrature(k: f64) -> f64 {
    let f = move |th: f64| 1.0 / delta_sq(k, th).sqrt();
    adaptive_simpson(&f, 0.0, FRAC_PI_2, 1e-15)
}

/// E(k) = ∫₀^{π/2} √(1 − k² sin²θ) dθ by quadrature.
pub fn e_quadrature(k: f64) -> f64 {
    let f = move |th: f64| delta_sq(k, th).sqrt();
    adaptive_simpson(&f, 0.0, FRAC_PI_2, 1e-15)
}

pub fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}
