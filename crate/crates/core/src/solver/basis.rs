use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::specfun::hankel1_orders;

/// Outgoing multipoles `H_n(k r) e^{inθ}`, `n = -N..=N`, about one centre.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultipoleFamily {
    pub center: Point,
    pub wavenumber: f64,
    pub order: usize,
}

impl MultipoleFamily {
    pub fn new(center: Point, wavenumber: f64, order: usize) -> Result<Self> {
        if !(wavenumber > 0.0 && wavenumber.is_finite()) {
            return Err(Error::Config(format!("wavenumber must be positive, got {wavenumber}")));
        }
        Ok(Self {
            center,
            wavenumber,
            order,
        })
    }

    /// `2N + 1`.
    pub fn size(&self) -> usize {
        2 * self.order + 1
    }

    /// Writes the family's values at `p` into `out[0..size]`, ordered
    /// `n = -N, ..., N`.
    pub fn evaluate(&self, p: Point, out: &mut [Complex64]) -> Result<()> {
        let d = p - self.center;
        let r = d.norm();
        if r == 0.0 {
            return Err(Error::Domain(format!(
                "evaluation point {p:?} coincides with a multipole centre"
            )));
        }
        let n_max = self.order;
        let h = hankel1_orders(n_max, self.wavenumber * r)?;
        let phase = Complex64::from_polar(1.0, d.angle());
        let mut rot = Complex64::new(1.0, 0.0);
        out[n_max] = h[0];
        for n in 1..=n_max {
            rot *= phase;
            let hn = h[n];
            out[n_max + n] = hn * rot;
            // H_{-n} = (-1)^n H_n and e^{-inθ} = conj(e^{inθ}).
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            out[n_max - n] = hn * rot.conj() * sign;
        }
        Ok(())
    }
}

/// Total dimension `Σ (2N_l + 1)` of a list of families.
pub fn total_dimension(families: &[MultipoleFamily]) -> usize {
    families.iter().map(MultipoleFamily::size).sum()
}

/// Values of every family at `p`, concatenated.
pub fn evaluate_families(families: &[MultipoleFamily], p: Point, out: &mut [Complex64]) -> Result<()> {
    let mut offset = 0;
    for f in families {
        f.evaluate(p, &mut out[offset..offset + f.size()])?;
        offset += f.size();
    }
    Ok(())
}

/// Incident plane wave `exp(i k (x cos φ + y sin φ))`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IncidentField {
    pub angle: f64,
    pub wavenumber: f64,
}

impl IncidentField {
    pub fn plane_wave(angle: f64, wavenumber: f64) -> Self {
        Self { angle, wavenumber }
    }

    pub fn eval(&self, p: Point) -> Complex64 {
        let (s, c) = self.angle.sin_cos();
        Complex64::from_polar(1.0, self.wavenumber * (p.x * c + p.y * s))
    }
}
