//! Independent reference computations for the integration tests. Nothing here
//! calls into the library's special-function or quadrature code.

#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;

/// Adaptive Simpson on `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn step(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) + step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// Complete elliptic integral of the first kind by direct quadrature of
/// `∫_0^{π/2} dθ / sqrt(1 - k² sin² θ)`.
pub fn elliptic_k_quadrature(k: f64) -> f64 {
    adaptive_simpson(&|t: f64| 1.0 / (1.0 - (k * t.sin()).powi(2)).sqrt(), 0.0, PI / 2.0, 1e-15)
}

/// Periodic trapezoid rule for `(1/2π) ∫_0^{2π} f`, spectrally accurate for
/// smooth periodic integrands.
fn periodic_mean(f: impl Fn(f64) -> f64, n: usize) -> f64 {
    (0..n).map(|j| f(2.0 * PI * j as f64 / n as f64)).sum::<f64>() / n as f64
}

/// `J_n(x) = (1/2π) ∫ cos(nτ - x sin τ) dτ`.
pub fn bessel_j_integral(n: i32, x: f64) -> f64 {
    let pts = 64 + 2 * (x.abs() as usize + n.unsigned_abs() as usize);
    periodic_mean(|t| (n as f64 * t - x * t.sin()).cos(), pts)
}

/// `Y_n(x) = (1/π) ∫_0^π sin(x sin τ - nτ) dτ
///          - (1/π) ∫_0^∞ (e^{nt} + (-1)^n e^{-nt}) e^{-x sinh t} dt`, `n >= 0`.
pub fn bessel_y_integral(n: i32, x: f64) -> f64 {
    let nf = n as f64;
    let first = adaptive_simpson(&|t: f64| (x * t.sin() - nf * t).sin(), 0.0, PI, 1e-14) / PI;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let g = |t: f64| ((nf * t - x * t.sinh()).exp()) + sign * ((-nf * t - x * t.sinh()).exp());
    // Integrand is below e^{-40} once x sinh t - n t > 40.
    let mut upper = 1.0;
    while x * f64::sinh(upper) - nf * upper < 40.0 {
        upper += 0.5;
    }
    let peak = g(0.0).abs().max(g((nf / x).max(1.0).acosh()).abs());
    let second = adaptive_simpson(&g, 0.0, upper, 1e-15 * peak.max(1.0)) / PI;
    first - second
}

pub fn hankel_integral(n: i32, x: f64) -> Complex64 {
    let a = n.abs();
    let sign = if n < 0 && a % 2 == 1 { -1.0 } else { 1.0 };
    Complex64::new(bessel_j_integral(a, x), bessel_y_integral(a, x)) * sign
}

/// Carlson `R_F(x, y, z)` for nonnegative reals by quadrature of
/// `½ ∫_0^∞ dt / sqrt((t+x)(t+y)(t+z))`, using `t = s² / (1 - s)²`.
pub fn carlson_rf_quadrature(x: f64, y: f64, z: f64) -> f64 {
    let f = |s: f64| {
        if s >= 1.0 {
            return 0.0;
        }
        if s == 0.0 {
            // limit of dt / sqrt(t) as s -> 0 is 2
            return if x == 0.0 { 1.0 / (y * z).sqrt() } else { 0.0 };
        }
        let t = s * s / ((1.0 - s) * (1.0 - s));
        let dt = 2.0 * s / (1.0 - s).powi(3);
        0.5 * dt / ((t + x) * (t + y) * (t + z)).sqrt()
    };
    // Split near the origin where the integrand may be sharply peaked.
    let pieces = [0.0, 1e-6, 1e-4, 1e-2, 0.1, 0.5, 0.9, 0.99, 1.0];
    pieces
        .windows(2)
        .map(|w| adaptive_simpson(&f, w[0], w[1], 1e-16))
        .sum()
}

/// `∫_0^z dζ / sqrt(1 - ζ⁴)` along the segment from 0, by composite
/// Simpson on real and imaginary parts.
pub fn square_integral(z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let f = |s: f64| {
        let w = z * s;
        z / (one - w * w * w * w).sqrt()
    };
    let re = adaptive_simpson(&|s| f(s).re, 0.0, 1.0, 1e-14);
    let im = adaptive_simpson(&|s| f(s).im, 0.0, 1.0, 1e-14);
    Complex64::new(re, im)
}

/// Exact circle coefficients from the quadrature Bessel oracles.
pub fn circle_coefficients_oracle(radius: f64, k: f64, angle: f64, order: i32) -> Vec<Complex64> {
    let x = k * radius;
    (-order..=order)
        .map(|n| {
            let j = bessel_j_integral(n, x);
            let h = hankel_integral(n, x);
            let i_n = Complex64::new(0.0, 1.0).powi(n);
            -i_n * Complex64::from_polar(1.0, -(n as f64) * angle) * j / h
        })
        .collect()
}

pub fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
