//! Probability densities on scatterer boundaries.
//!
//! A density is exposed in two ways: through its inverse cumulative
//! distribution in the curve parameter (used to place samples) and through
//! its value `dν/dt` (used for checks and quadrature).

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::conformal::{EllipseMap, SquareMap};
use super::scatterer::{Point, Scatterer, Shape};
use crate::error::{Error, Result};

/// Step in the uniform variable used to differentiate map-induced parametrisations.
pub const KM_DIFFERENCE_STEP: f64 = 1e-6;

/// Aspect ratios closer to 1 than this are treated as circles by the KM map.
const CIRCLE_ASPECT_TOLERANCE: f64 = 1e-9;

/// `e^{2πiu}`, exact at quarter turns where the square map is singular.
fn unit_circle(u: f64) -> Complex64 {
    let q = 4.0 * u;
    let turns = q.round();
    let base = match (turns as i64).rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    };
    base * Complex64::from_polar(1.0, 0.5 * PI * (q - turns))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DensityKind {
    /// Uniform in arclength.
    UniformArclength,
    /// Uniform in the curve parameter (uniform angle for circles and ovals).
    UniformParameter,
    /// Images of equispaced unit-circle points under the disk-to-ellipse map.
    KmEllipse,
    /// Images of equispaced unit-circle points under the disk-to-square map.
    KmSquare,
    /// Arcsine density on each edge of the square, a quarter of the mass per edge.
    ChebyshevSquare,
    /// Uniform circle density stretched onto the ellipse, `(a cos 2πu, b sin 2πu)`.
    StretchedCircleEllipse,
}

impl DensityKind {
    pub fn name(self) -> &'static str {
        match self {
            DensityKind::UniformArclength => "uniform_arclength",
            DensityKind::UniformParameter => "uniform_parameter",
            DensityKind::KmEllipse => "km_ellipse",
            DensityKind::KmSquare => "km_square",
            DensityKind::ChebyshevSquare => "chebyshev_square",
            DensityKind::StretchedCircleEllipse => "stretched_circle_ellipse",
        }
    }

    /// Whether this density is defined on the given shape.
    pub fn supports(self, shape: &Shape) -> bool {
        match self {
            DensityKind::UniformArclength | DensityKind::UniformParameter => true,
            DensityKind::KmEllipse | DensityKind::StretchedCircleEllipse => {
                matches!(shape, Shape::Ellipse { .. } | Shape::Circle { .. })
            }
            DensityKind::KmSquare | DensityKind::ChebyshevSquare => {
                matches!(shape, Shape::Square { .. })
            }
        }
    }
}

impl std::fmt::Display for DensityKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
enum DiskMap {
    None,
    Ellipse { map: EllipseMap, minor: f64 },
    Square(SquareMap),
}

/// A sample on a boundary: curve parameter, position and arclength rate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundarySample {
    pub t: f64,
    pub position: Point,
    pub speed: f64,
}

/// A probability density on the boundary of one scatterer.
#[derive(Clone, Debug)]
pub struct BoundaryDensity {
    kind: DensityKind,
    scatterer: Scatterer,
    map: DiskMap,
}

impl BoundaryDensity {
    pub fn new(kind: DensityKind, scatterer: Scatterer) -> Result<Self> {
        if !kind.supports(scatterer.shape()) {
            return Err(Error::Config(format!(
                "density {kind} is not defined on {:?}",
                scatterer.shape()
            )));
        }
        let map = match (kind, scatterer.shape()) {
            (DensityKind::KmEllipse, &Shape::Ellipse { a, b }) if a / b - 1.0 > CIRCLE_ASPECT_TOLERANCE => {
                DiskMap::Ellipse {
                    map: EllipseMap::new(a / b)?,
                    minor: b,
                }
            }
            (DensityKind::KmSquare, &Shape::Square { half_side }) => {
                DiskMap::Square(SquareMap::new(half_side)?)
            }
            _ => DiskMap::None,
        };
        Ok(Self { kind, scatterer, map })
    }

    pub fn kind(&self) -> DensityKind {
        self.kind
    }

    pub fn scatterer(&self) -> &Scatterer {
        &self.scatterer
    }

    /// Parameter of the map image of `e^{2πiu}`, continuous in `u` with
    /// `lifted(u + 1) = lifted(u) + 1`.
    fn km_lifted(&self, u: f64) -> Result<f64> {
        let raw = match &self.map {
            DiskMap::Ellipse { map, minor } => {
                let z = unit_circle(u);
                let w = map.map(z)? * *minor;
                let p = self.scatterer.center() + Point::new(w.re, w.im);
                self.scatterer.parameter_of(p).expect("ellipse parameter")
            }
            DiskMap::Square(map) => {
                // Prevertex -i lands on the corner (h, -h) where t = 0.
                let z = unit_circle(u + 0.75);
                let w = map.map(z)?;
                let p = self.scatterer.center() + Point::new(w.re, w.im);
                self.scatterer.parameter_of(p).expect("square parameter")
            }
            DiskMap::None => u.rem_euclid(1.0),
        };
        Ok(raw + (u - raw).round())
    }

    /// Maps a quantile `u` in `[0, 1]` to the curve parameter `t` in `[0, 1)`.
    pub fn inverse_cdf(&self, u: f64) -> Result<f64> {
        let t = match self.kind {
            DensityKind::UniformArclength => self.scatterer.parameter_at_arclength_fraction(u),
            DensityKind::UniformParameter | DensityKind::StretchedCircleEllipse => u,
            DensityKind::KmEllipse | DensityKind::KmSquare => self.km_lifted(u)?,
            DensityKind::ChebyshevSquare => {
                let q = 4.0 * u.clamp(0.0, 1.0);
                let edge = q.floor().min(3.0);
                let v = q - edge;
                (edge + 0.5 * (1.0 - (PI * v).cos())) / 4.0
            }
        };
        let t = t.rem_euclid(1.0);
        Ok(if 1.0 - t <= 4.0 * f64::EPSILON { 0.0 } else { t })
    }

    /// Cumulative distribution: the quantile `u` in `[0, 1)` of parameter `t`.
    pub fn cdf(&self, t: f64) -> Result<f64> {
        let t = t.rem_euclid(1.0);
        Ok(match self.kind {
            DensityKind::UniformArclength => self.scatterer.arclength_fraction(t),
            DensityKind::UniformParameter | DensityKind::StretchedCircleEllipse => t,
            DensityKind::ChebyshevSquare => {
                let q = 4.0 * t;
                let edge = q.floor().min(3.0);
                let s = q - edge;
                (edge + (1.0 - 2.0 * s).clamp(-1.0, 1.0).acos() / PI) / 4.0
            }
            DensityKind::KmEllipse | DensityKind::KmSquare => {
                let (mut lo, mut hi) = (t - 0.5, t + 0.5);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    if self.km_lifted(mid)? < t {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                (0.5 * (lo + hi)).rem_euclid(1.0)
            }
        })
    }

    /// Density `dν/dt` with respect to the curve parameter.
    pub fn weight(&self, t: f64) -> Result<f64> {
        let t = t.rem_euclid(1.0);
        Ok(match self.kind {
            DensityKind::UniformArclength => self.scatterer.speed(t) / self.scatterer.perimeter(),
            DensityKind::UniformParameter | DensityKind::StretchedCircleEllipse => 1.0,
            DensityKind::ChebyshevSquare => {
                let q = 4.0 * t;
                let s = q - q.floor();
                1.0 / (PI * (s * (1.0 - s)).sqrt())
            }
            DensityKind::KmEllipse | DensityKind::KmSquare => {
                if matches!(self.map, DiskMap::None) {
                    return Ok(1.0);
                }
                let u = self.cdf(t)?;
                let h = KM_DIFFERENCE_STEP;
                let dt = self.km_lifted(u + h)? - self.km_lifted(u - h)?;
                2.0 * h / dt
            }
        })
    }

    /// Density with respect to arclength, `dν/ds`.
    pub fn arclength_weight(&self, t: f64) -> Result<f64> {
        Ok(self.weight(t)? / self.scatterer.speed(t))
    }

    /// Curve parameters of the equispaced quantiles `(j + offset) / n`.
    pub fn quantile_parameters(&self, n: usize, offset: f64) -> Result<Vec<f64>> {
        if n == 0 {
            return Err(Error::Config("sample count must be at least 1".into()));
        }
        if !(0.0..1.0).contains(&offset) {
            return Err(Error::Config(format!("offset must lie in [0, 1), got {offset}")));
        }
        (0..n)
            .map(|j| self.inverse_cdf((j as f64 + offset) / n as f64))
            .collect()
    }

    fn sample_at(&self, t: f64) -> BoundarySample {
        let bp = self.scatterer.boundary_point(t);
        BoundarySample {
            t,
            position: bp.position,
            speed: bp.speed,
        }
    }

    /// `n` deterministic samples at the quantiles `(j + offset) / n` of the density.
    pub fn sample_points(&self, n: usize, offset: f64) -> Result<Vec<BoundarySample>> {
        Ok(self
            .quantile_parameters(n, offset)?
            .into_iter()
            .map(|t| self.sample_at(t))
            .collect())
    }

    /// `n` independent draws from the density, reproducible from `seed`.
    pub fn sample_points_random(&self, n: usize, seed: u64) -> Result<Vec<BoundarySample>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| {
                let u: f64 = rng.random();
                Ok(self.sample_at(self.inverse_cdf(u)?))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    #[test]
    fn kind_mismatch_is_rejected() {
        let oval = Scatterer::booth_oval(2.0).unwrap();
        assert!(matches!(
            BoundaryDensity::new(DensityKind::KmEllipse, oval.clone()),
            Err(Error::Config(_))
        ));
        assert!(BoundaryDensity::new(DensityKind::ChebyshevSquare, oval).is_err());
        let sq = Scatterer::square(1.0).unwrap();
        assert!(BoundaryDensity::new(DensityKind::KmEllipse, sq).is_err());
    }

    #[test]
    fn uniform_circle() {
        let d = BoundaryDensity::new(DensityKind::UniformArclength, Scatterer::circle(1.0).unwrap())
            .unwrap();
        assert!((d.inverse_cdf(0.5).unwrap() - 0.5).abs() < 1e-14);
        assert!((d.weight(0.3).unwrap() - 1.0).abs() < 1e-12);
        let pts = d.sample_points(4, 0.0).unwrap();
        let expect = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)];
        for (p, (x, y)) in pts.iter().zip(expect) {
            assert!((p.position - Point::new(x, y)).norm() < 1e-13);
        }
    }

    #[test]
    fn oval_uniform_angle() {
        let d = BoundaryDensity::new(DensityKind::UniformParameter, Scatterer::booth_oval(2.0).unwrap())
            .unwrap();
        let pts = d.sample_points(131, 0.0).unwrap();
        for (j, p) in pts.iter().enumerate() {
            let theta = TAU * j as f64 / 131.0;
            let r = 1.0 + (2.0 * theta).cos() / 2.0;
            assert!((p.position - Point::from_polar(r, theta)).norm() < 1e-14);
        }
    }

    #[test]
    fn km_ellipse_of_circle_is_uniform() {
        let d = BoundaryDensity::new(DensityKind::KmEllipse, Scatterer::ellipse(1.0, 1.0).unwrap())
            .unwrap();
        assert_eq!(d.inverse_cdf(0.3).unwrap(), 0.3);
        assert_eq!(d.weight(0.7).unwrap(), 1.0);
    }

    #[test]
    fn chebyshev_cdf_inverts() {
        let d = BoundaryDensity::new(DensityKind::ChebyshevSquare, Scatterer::square(1.0).unwrap())
            .unwrap();
        for i in 0..40 {
            let u = (i as f64 + 0.5) / 40.0;
            let t = d.inverse_cdf(u).unwrap();
            assert!((d.cdf(t).unwrap() - u).abs() < 1e-13);
        }
    }

    #[test]
    fn bad_sample_requests() {
        let d = BoundaryDensity::new(DensityKind::UniformParameter, Scatterer::circle(1.0).unwrap())
            .unwrap();
        assert!(d.sample_points(0, 0.0).is_err());
        assert!(d.sample_points(4, 1.0).is_err());
    }

    #[test]
    fn random_sampling_is_seeded() {
        let d = BoundaryDensity::new(DensityKind::UniformArclength, Scatterer::ellipse(2.0, 1.0).unwrap())
            .unwrap();
        let a = d.sample_points_random(10, 7).unwrap();
        let b = d.sample_points_random(10, 7).unwrap();
        let c = d.sample_points_random(10, 8).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
