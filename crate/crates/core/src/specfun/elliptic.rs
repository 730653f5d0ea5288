//! Complete elliptic integral of the first kind and Carlson's `R_F`.

use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

/// Relative tolerance driving the duplication loop of [`carlson_rf`].
pub const CARLSON_TOLERANCE: f64 = 1e-14;
const CARLSON_MAX_ITER: usize = 100;

fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        if (a - b).abs() <= 2.0 * f64::EPSILON * a {
            break;
        }
        let m = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = m;
    }
    0.5 * (a + b)
}

/// `K(k)` from the complementary modulus `k' = sqrt(1 - k^2)`.
///
/// Taking `k'` directly keeps full relative accuracy when `k` is close to 1.
pub fn elliptic_k_from_complement(kp: f64) -> Result<f64> {
    if !(kp > 0.0 && kp <= 1.0) {
        return Err(Error::Domain(format!(
            "complementary modulus must lie in (0, 1], got {kp}"
        )));
    }
    Ok(FRAC_PI_2 / agm(1.0, kp))
}

/// Complete elliptic integral of the first kind with modulus `k`,
/// `∫_0^{π/2} dθ / sqrt(1 - k² sin² θ)`, by the arithmetic-geometric mean.
pub fn elliptic_k(k: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&k) {
        return Err(Error::Domain(format!("modulus must lie in [0, 1), got {k}")));
    }
    elliptic_k_from_complement(((1.0 - k) * (1.0 + k)).sqrt())
}

/// Carlson's symmetric elliptic integral of the first kind,
/// `R_F(x, y, z) = ½ ∫_0^∞ dt / sqrt((t+x)(t+y)(t+z))`, for complex arguments
/// off the negative real axis with at most one of them zero.
///
/// The arguments are put in a canonical order first, so the result is
/// bitwise identical under every permutation.
pub fn carlson_rf(x: Complex64, y: Complex64, z: Complex64) -> Result<Complex64> {
    let mut args = [x, y, z];
    if args.iter().any(|a| !(a.re.is_finite() && a.im.is_finite())) {
        return Err(Error::Domain(format!("non-finite argument to R_F: {args:?}")));
    }
    if args.iter().filter(|a| a.norm() == 0.0).count() > 1 {
        return Err(Error::Domain("R_F needs at most one zero argument".into()));
    }
    args.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let [x0, y0, z0] = args;

    let (mut x, mut y, mut z) = (x0, y0, z0);
    let a0 = (x + y + z) / 3.0;
    let spread = [(a0 - x).norm(), (a0 - y).norm(), (a0 - z).norm()]
        .into_iter()
        .fold(0.0, f64::max);
    let q = (3.0 * CARLSON_TOLERANCE).powf(-1.0 / 6.0) * spread;

    let mut a = a0;
    let mut scale = 1.0; // 4^-m
    let mut iter = 0;
    while scale * q >= a.norm() {
        if iter == CARLSON_MAX_ITER {
            return Err(Error::Numerical(format!(
                "R_F({x0}, {y0}, {z0}) did not converge in {CARLSON_MAX_ITER} duplications \
                 (|A| = {:.3e}, 4^-m Q = {:.3e})",
                a.norm(),
                scale * q
            )));
        }
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lambda = sx * sy + sx * sz + sy * sz;
        x = (x + lambda) * 0.25;
        y = (y + lambda) * 0.25;
        z = (z + lambda) * 0.25;
        a = (a + lambda) * 0.25;
        scale *= 0.25;
        iter += 1;
    }

    let dx = (a0 - x0) * scale / a;
    let dy = (a0 - y0) * scale / a;
    let dz = -(dx + dy);
    let e2 = dx * dy - dz * dz;
    let e3 = dx * dy * dz;
    let series = Complex64::new(1.0, 0.0) - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0
        - e2 * e3 * (3.0 / 44.0);
    let out = series / a.sqrt();
    if !(out.re.is_finite() && out.im.is_finite()) {
        return Err(Error::Numerical(format!(
            "R_F({x0}, {y0}, {z0}) produced a non-finite value"
        )));
    }
    Ok(out)
}

/// Incomplete elliptic integral `∫_0^w dt / sqrt((1 - t²)(1 - m t²))` along
/// the straight segment from 0, as `w R_F(1 - w², 1 - m w², 1)`.
pub fn incomplete_first_kind(w: Complex64, m: Complex64) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let w2 = w * w;
    if w2.norm() == 0.0 {
        return Ok(w);
    }
    Ok(w * carlson_rf(one - w2, one - m * w2, one)?)
}
