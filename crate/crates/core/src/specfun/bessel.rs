//! Integer-order cylinder functions of real positive argument.
//!
//! `J_n` comes from Miller's downward recurrence normalised with
//! `J_0 + 2 Σ J_2k = 1`. `Y_0` and `Y_1` are then obtained from the Neumann
//! series in those same `J` values and carried upward, which is the stable
//! direction for `Y`. Every recurrence value is stored with its own binary
//! exponent so that orders far beyond the argument do not under/overflow
//! before the caller decides how to combine them.

use num_complex::Complex64;
use std::f64::consts::{FRAC_2_PI, PI};

use crate::error::{Error, Result};

/// Largest supported order magnitude.
pub const MAX_ORDER: i32 = 300;
/// Largest supported argument.
pub const MAX_ARGUMENT: f64 = 1000.0;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `mantissa * 2^exponent`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Scaled {
    pub m: f64,
    pub e: i32,
}

impl Scaled {
    pub fn value(self) -> f64 {
        ldexp(self.m, self.e)
    }

    /// Mantissa expressed relative to `2^e`.
    pub fn at_exponent(self, e: i32) -> f64 {
        ldexp(self.m, self.e - e)
    }
}

fn pow2(e: i32) -> f64 {
    debug_assert!((-1022..=1023).contains(&e));
    f64::from_bits(((e + 1023) as u64) << 52)
}

/// `x * 2^e` without intermediate overflow of the power.
pub(crate) fn ldexp(mut x: f64, mut e: i32) -> f64 {
    while e > 1000 {
        x *= pow2(1000);
        e -= 1000;
        if !x.is_finite() {
            return x;
        }
    }
    while e < -1000 {
        x *= pow2(-1000);
        e += 1000;
        if x == 0.0 {
            return x;
        }
    }
    x * pow2(e)
}

/// Unbiased binary exponent of a normal, nonzero double.
fn binary_exponent(v: f64) -> i32 {
    (((v.to_bits() >> 52) & 0x7ff) as i32) - 1023
}

fn check_argument(x: f64) -> Result<()> {
    if !(x > 0.0 && x <= MAX_ARGUMENT) {
        return Err(Error::Domain(format!(
            "cylinder function argument must lie in (0, {MAX_ARGUMENT}], got {x}"
        )));
    }
    Ok(())
}

fn check_order(n: i64) -> Result<()> {
    if n.abs() > MAX_ORDER as i64 {
        return Err(Error::Domain(format!(
            "cylinder function order |{n}| exceeds {MAX_ORDER}"
        )));
    }
    Ok(())
}

fn miller_start(nmax: usize, x: f64) -> usize {
    let base = (nmax as f64).max(x);
    let start = (base + 30.0 + 10.0 * base.cbrt()).ceil() as usize;
    start + start % 2
}

/// Orders `0..=start` of `J` for an automatically chosen Miller start order
/// that lies above `nmax`.
pub(crate) fn bessel_j_scaled(nmax: usize, x: f64) -> Vec<Scaled> {
    let start = miller_start(nmax, x);
    let mut mant = vec![0.0; start + 1];
    let mut shift_at = vec![0i32; start + 1];

    let mut shift = 0i32;
    let mut above = 0.0;
    let mut cur = 1.0;
    mant[start] = cur;
    for n in (1..=start).rev() {
        let below = (2.0 * n as f64 / x) * cur - above;
        above = cur;
        cur = below;
        if cur.abs() > 1.0 {
            let e = binary_exponent(cur);
            let s = pow2(-e);
            cur *= s;
            above *= s;
            shift += e;
        }
        mant[n - 1] = cur;
        shift_at[n - 1] = shift;
    }

    // Everything below is expressed in the frame of order 0.
    let mut norm = mant[0];
    for n in (2..=start).step_by(2) {
        norm += 2.0 * ldexp(mant[n], shift_at[n] - shift);
    }

    mant.iter()
        .zip(&shift_at)
        .map(|(&m, &s)| Scaled {
            m: m / norm,
            e: s - shift,
        })
        .collect()
}

/// `Y_0` and `Y_1` from the Neumann series over the `J` table.
fn neumann_y01(j: &[Scaled], x: f64) -> (f64, f64) {
    let log_term = (0.5 * x).ln() + EULER_GAMMA;
    let jv = |n: usize| j.get(n).map_or(0.0, |s| s.value());

    let mut even = 0.0;
    let mut odd = 0.0;
    let mut k = 1usize;
    while 2 * k + 1 < j.len() {
        let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        let kf = k as f64;
        even += sign * jv(2 * k) / kf;
        odd += sign * (2.0 * kf + 1.0) / (kf * (kf + 1.0)) * jv(2 * k + 1);
        k += 1;
    }
    let y0 = FRAC_2_PI * (log_term * jv(0) - 2.0 * even);
    let y1 = FRAC_2_PI * ((log_term - 1.0) * jv(1) - jv(0) / x - odd);
    (y0, y1)
}

/// Orders `0..=nmax` of `Y`, each with its own binary exponent.
pub(crate) fn bessel_y_scaled(nmax: usize, x: f64, j: &[Scaled]) -> Vec<Scaled> {
    let (y0, y1) = neumann_y01(j, x);
    let mut out = Vec::with_capacity(nmax + 1);
    out.push(Scaled { m: y0, e: 0 });
    if nmax == 0 {
        return out;
    }
    out.push(Scaled { m: y1, e: 0 });

    let mut prev = y0;
    let mut cur = y1;
    let mut shift = 0i32;
    for n in 1..nmax {
        let next = (2.0 * n as f64 / x) * cur - prev;
        prev = cur;
        cur = next;
        if cur.abs() > 1.0 {
            let e = binary_exponent(cur);
            let s = pow2(-e);
            cur *= s;
            prev *= s;
            shift += e;
        }
        out.push(Scaled { m: cur, e: shift });
    }
    out
}

fn parity(n: i32) -> f64 {
    if n.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Bessel function of the first kind `J_n(x)`.
///
/// Values below the smallest subnormal double come back as zero.
pub fn bessel_j(n: i32, x: f64) -> Result<f64> {
    check_order(n as i64)?;
    check_argument(x)?;
    let order = n.unsigned_abs() as usize;
    let j = bessel_j_scaled(order, x);
    Ok(parity(n.min(0)) * j[order].value())
}

/// Bessel function of the second kind `Y_n(x)`.
pub fn bessel_y(n: i32, x: f64) -> Result<f64> {
    check_order(n as i64)?;
    check_argument(x)?;
    let order = n.unsigned_abs() as usize;
    let j = bessel_j_scaled(order, x);
    let y = bessel_y_scaled(order, x, &j);
    let v = parity(n.min(0)) * y[order].value();
    if !v.is_finite() {
        return Err(Error::Overflow(format!("Y_{n}({x}) exceeds double range")));
    }
    Ok(v)
}

/// `J_n`, `Y_n` and their derivatives at one point, held in a common scale.
///
/// The true values are `j * 2^exponent`, `jp * 2^exponent`,
/// `y * 2^-exponent` and `yp * 2^-exponent`, so products such as the
/// Wronskian `j * yp - jp * y` are exact in the stored fields even where
/// `J_n` underflows and `Y_n` overflows.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CylinderEval {
    pub order: i32,
    pub x: f64,
    pub j: f64,
    pub y: f64,
    pub jp: f64,
    pub yp: f64,
    pub exponent: i32,
}

impl CylinderEval {
    pub fn j_value(&self) -> f64 {
        ldexp(self.j, self.exponent)
    }

    pub fn jp_value(&self) -> f64 {
        ldexp(self.jp, self.exponent)
    }

    pub fn y_value(&self) -> f64 {
        ldexp(self.y, -self.exponent)
    }

    pub fn yp_value(&self) -> f64 {
        ldexp(self.yp, -self.exponent)
    }

    /// `J_n Y_n' - J_n' Y_n`, which equals `2 / (pi x)`.
    pub fn wronskian(&self) -> f64 {
        self.j * self.yp - self.jp * self.y
    }
}

/// Evaluates `J_n`, `Y_n`, `J_n'`, `Y_n'` in the scaled form of [`CylinderEval`].
pub fn cylinder(n: i32, x: f64) -> Result<CylinderEval> {
    check_order(n as i64)?;
    check_argument(x)?;
    let order = n.unsigned_abs() as usize;
    let jt = bessel_j_scaled(order + 1, x);
    let yt = bessel_y_scaled(order + 1, x, &jt);

    let (ej, ey) = (jt[order].e, yt[order].e);
    let (j, jp, y, yp) = if order == 0 {
        (
            jt[0].m,
            -jt[1].at_exponent(ej),
            yt[0].m,
            -yt[1].at_exponent(ey),
        )
    } else {
        let ratio = order as f64 / x;
        (
            jt[order].m,
            jt[order - 1].at_exponent(ej) - ratio * jt[order].m,
            yt[order].m,
            yt[order - 1].at_exponent(ey) - ratio * yt[order].m,
        )
    };
    // Move Y into the reciprocal of J's scale.
    let y_shift = ey + ej;
    let sign = parity(n.min(0));
    Ok(CylinderEval {
        order: n,
        x,
        j: sign * j,
        jp: sign * jp,
        y: sign * ldexp(y, y_shift),
        yp: sign * ldexp(yp, y_shift),
        exponent: ej,
    })
}

/// Value and derivative of the Hankel function of the first kind.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HankelEval {
    pub value: Complex64,
    pub derivative: Complex64,
}

/// `H_n(x) = J_n(x) + i Y_n(x)` with `H_n'(x) = H_{n-1}(x) - (n/x) H_n(x)`.
pub fn hankel1(n: i32, x: f64) -> Result<HankelEval> {
    let c = cylinder(n, x)?;
    let value = Complex64::new(c.j_value(), c.y_value());
    let derivative = Complex64::new(c.jp_value(), c.yp_value());
    if !(value.im.is_finite() && derivative.im.is_finite()) {
        return Err(Error::Overflow(format!("H_{n}({x}) exceeds double range")));
    }
    Ok(HankelEval { value, derivative })
}

/// `J_n(x)` and `Y_n(x)` for `n = 0..=nmax`, in true (unscaled) values.
///
/// Fails with [`Error::Overflow`] when some `Y_n` leaves the double range.
pub fn bessel_jy_orders(nmax: usize, x: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    check_order(nmax as i64)?;
    check_argument(x)?;
    let jt = bessel_j_scaled(nmax, x);
    let yt = bessel_y_scaled(nmax, x, &jt);
    let j: Vec<f64> = jt[..=nmax].iter().map(|s| s.value()).collect();
    let y: Vec<f64> = yt.iter().map(|s| s.value()).collect();
    if let Some(n) = y.iter().position(|v| !v.is_finite()) {
        return Err(Error::Overflow(format!("Y_{n}({x}) exceeds double range")));
    }
    Ok((j, y))
}

/// `H_n(x)` for `n = 0..=nmax`.
pub fn hankel1_orders(nmax: usize, x: f64) -> Result<Vec<Complex64>> {
    let (j, y) = bessel_jy_orders(nmax, x)?;
    Ok(j.into_iter()
        .zip(y)
        .map(|(re, im)| Complex64::new(re, im))
        .collect())
}

/// `2 / (pi x)`.
pub fn wronskian_jy(x: f64) -> f64 {
    2.0 / (PI * x)
}
