//! Conformal maps from the unit disk onto the ellipse and the square.
//!
//! Boundary images of equispaced points on the unit circle give the
//! Kleev-Manenkov (KM) sampling of those scatterers.

use num_complex::Complex64;
use std::f64::consts::{FRAC_2_PI, FRAC_PI_4, PI, SQRT_2};

use crate::error::{Error, Result};
use crate::specfun::{carlson_rf, elliptic_k_from_complement, incomplete_first_kind};

/// Modulus `k` and complementary modulus `k'` of the ellipse map.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EllipseModulus {
    pub k: f64,
    pub kp: f64,
}

/// `K(k') / K(k)` as a function of the parameter angle `θ` where the smaller
/// of the two moduli is `sin θ`.
fn period_ratio(theta: f64) -> Result<f64> {
    let (s, c) = theta.sin_cos();
    Ok(elliptic_k_from_complement(s)? / elliptic_k_from_complement(c)?)
}

/// Solves `K(k') / K(k) = (2/π) asinh(2a / (a² - 1))` for the ellipse with
/// semi-axes `(a, 1)`, `a > 1`.
///
/// The root is bracketed on an angle so that whichever of `k`, `k'` is small
/// is carried with full relative precision.
pub fn solve_ellipse_modulus_pair(a: f64) -> Result<EllipseModulus> {
    if !(a > 1.0 && a.is_finite()) {
        return Err(Error::Domain(format!("ellipse aspect ratio must exceed 1, got {a}")));
    }
    let rhs = FRAC_2_PI * (2.0 * a / ((a - 1.0) * (a + 1.0))).asinh();
    // For rhs >= 1 the small modulus is k, otherwise k'.
    let (target, small_is_k) = if rhs >= 1.0 { (rhs, true) } else { (1.0 / rhs, false) };

    // period_ratio is decreasing on (0, π/4] and equals 1 at π/4.
    let (mut lo, mut hi) = (1e-300_f64, FRAC_PI_4);
    if period_ratio(lo)? < target {
        return Err(Error::Numerical(format!(
            "ellipse modulus for a = {a} is below double-precision resolution"
        )));
    }
    for _ in 0..2000 {
        let mid = if hi / lo > 4.0 { (lo * hi).sqrt() } else { 0.5 * (lo + hi) };
        if mid <= lo || mid >= hi {
            break;
        }
        if period_ratio(mid)? > target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-17 * hi {
            break;
        }
    }
    let theta = 0.5 * (lo + hi);
    let (s, c) = theta.sin_cos();
    if (hi - lo) * c > 1e-14 {
        return Err(Error::Numerical(format!(
            "ellipse modulus bisection stalled for a = {a} (bracket width {})",
            hi - lo
        )));
    }
    Ok(if small_is_k {
        EllipseModulus { k: s, kp: c }
    } else {
        EllipseModulus { k: c, kp: s }
    })
}

/// The modulus `k` in `(0, 1)` of the disk-to-ellipse map for semi-axes `(a, 1)`.
pub fn solve_ellipse_modulus(a: f64) -> Result<f64> {
    Ok(solve_ellipse_modulus_pair(a)?.k)
}

/// Residual `K(k')/K(k) - (2/π) asinh(2a/(a²-1))` of the modulus equation.
pub fn ellipse_modulus_residual(a: f64, m: EllipseModulus) -> Result<f64> {
    let lhs = elliptic_k_from_complement(m.k)? / elliptic_k_from_complement(m.kp)?;
    Ok(lhs - FRAC_2_PI * (2.0 * a / ((a - 1.0) * (a + 1.0))).asinh())
}

/// Conformal map of the closed unit disk onto the ellipse with semi-axes
/// `(a, 1)`, fixing the origin:
/// `f(z) = sqrt(a² - 1) sin(π / (2K(k)) F(z / sqrt(k), k))`.
#[derive(Clone, Debug)]
pub struct EllipseMap {
    aspect: f64,
    modulus: EllipseModulus,
    quarter_period: f64,
    focal: f64,
}

impl EllipseMap {
    pub fn new(aspect: f64) -> Result<Self> {
        let modulus = solve_ellipse_modulus_pair(aspect)?;
        let quarter_period = elliptic_k_from_complement(modulus.kp)?;
        Ok(Self {
            aspect,
            modulus,
            quarter_period,
            focal: ((aspect - 1.0) * (aspect + 1.0)).sqrt(),
        })
    }

    pub fn aspect(&self) -> f64 {
        self.aspect
    }

    pub fn modulus(&self) -> EllipseModulus {
        self.modulus
    }

    pub fn map(&self, z: Complex64) -> Result<Complex64> {
        let k = self.modulus.k;
        let w = z / k.sqrt();
        let f = incomplete_first_kind(w, Complex64::new(k * k, 0.0))?;
        Ok(self.focal * (f * (PI / (2.0 * self.quarter_period))).sin())
    }
}

/// Free-function form of [`EllipseMap::map`] for a given modulus.
pub fn ellipse_map(a: f64, k: f64, z: Complex64) -> Result<Complex64> {
    if !(0.0 < k && k < 1.0) {
        return Err(Error::Domain(format!("modulus must lie in (0, 1), got {k}")));
    }
    let kp = ((1.0 - k) * (1.0 + k)).sqrt();
    let quarter_period = elliptic_k_from_complement(kp)?;
    let w = z / k.sqrt();
    let f = incomplete_first_kind(w, Complex64::new(k * k, 0.0))?;
    Ok(((a - 1.0) * (a + 1.0)).sqrt() * (f * (PI / (2.0 * quarter_period))).sin())
}

/// Schwarz-Christoffel integral `∫_0^z dζ / sqrt(1 - ζ⁴)` for `|z| <= 1`.
///
/// Evaluated in closed form as `z R_F(1 - z², 1 + z², 1)`; the image of the
/// disk is the square with vertices `±f(1)`, `±i f(1)`.
pub fn sc_square_map(z: Complex64) -> Result<Complex64> {
    if z.norm().is_nan() || z.norm() > 1.0 + 1e-12 {
        return Err(Error::Domain(format!("square map needs |z| <= 1, got |z| = {}", z.norm())));
    }
    let one = Complex64::new(1.0, 0.0);
    let z2 = z * z;
    if z2.norm() == 0.0 {
        return Ok(z);
    }
    Ok(z * carlson_rf(one - z2, one + z2, one)?)
}

/// The square map rescaled and rotated onto `[-h, h]²`, with prevertex `1`
/// landing on the corner `(h, h)`.
#[derive(Clone, Debug)]
pub struct SquareMap {
    half_side: f64,
    factor: Complex64,
}

impl SquareMap {
    pub fn new(half_side: f64) -> Result<Self> {
        let f1 = sc_square_map(Complex64::new(1.0, 0.0))?.re;
        let factor = Complex64::from_polar(half_side * SQRT_2 / f1, FRAC_PI_4);
        Ok(Self { half_side, factor })
    }

    pub fn half_side(&self) -> f64 {
        self.half_side
    }

    pub fn map(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.factor * sc_square_map(z)?)
    }
}

/// `f(1)` of the unscaled square map, `K(1/√2)/√2`.
pub fn sc_square_vertex() -> Result<f64> {
    Ok(elliptic_k_from_complement(std::f64::consts::FRAC_1_SQRT_2)? / SQRT_2)
}
