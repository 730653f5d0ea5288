use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::bessel_jy_orders;

/// Exact sound-soft coefficients for a plane wave hitting the circle of
/// radius `radius` centred at the origin:
/// `α_n = -i^n e^{-inφ} J_n(kR) / H_n(kR)`, ordered `n = -N..=N`.
pub fn analytic_circle_solution(radius: f64, wavenumber: f64, angle: f64, order: usize) -> Result<Vec<Complex64>> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::Domain(format!("circle radius must be positive, got {radius}")));
    }
    let x = wavenumber * radius;
    let (j, y) = bessel_jy_orders(order, x)?;
    let n_max = order as i64;
    let mut out = Vec::with_capacity(2 * order + 1);
    for n in -n_max..=n_max {
        let a = n.unsigned_abs() as usize;
        // J_{-n}/H_{-n} = J_n/H_n since both pick up (-1)^n.
        let ratio = j[a] / Complex64::new(j[a], y[a]);
        let i_pow = match n.rem_euclid(4) {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
        let phase = Complex64::from_polar(1.0, -(n as f64) * angle);
        let v = -i_pow * phase * ratio;
        // Y_n overflows long after J_n/H_n has reached zero.
        out.push(if v.is_finite() { v } else { Complex64::new(0.0, 0.0) });
    }
    Ok(out)
}
