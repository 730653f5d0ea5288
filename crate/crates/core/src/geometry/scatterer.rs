use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::GaussRule;

/// A point in the plane.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn from_polar(r: f64, theta: f64) -> Self {
        Self::new(r * theta.cos(), r * theta.sin())
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn rotated(self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }
}

impl std::ops::Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl std::ops::Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

/// Shape of a scatterer in its own frame (centred at the origin).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Shape {
    Circle { radius: f64 },
    /// Semi-axes along x and y, `a >= b > 0`.
    Ellipse { a: f64, b: f64 },
    /// The square `[-h, h]^2`.
    Square { half_side: f64 },
    /// `r(θ) = 1 + cos(2θ) / a`, rotated by `rotation` radians.
    BoothOval {
        a: f64,
        #[serde(default)]
        rotation: f64,
    },
}

impl Shape {
    fn validate(&self) -> Result<()> {
        let ok = match *self {
            Shape::Circle { radius } => radius > 0.0 && radius.is_finite(),
            Shape::Ellipse { a, b } => b > 0.0 && a >= b && a.is_finite(),
            Shape::Square { half_side } => half_side > 0.0 && half_side.is_finite(),
            Shape::BoothOval { a, rotation } => a > 1.0 && a.is_finite() && rotation.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Config(format!("invalid shape parameters {self:?}")))
        }
    }

    /// Position relative to the centre and `d/dt` of it, for `t` in `[0, 1)`.
    fn local(&self, t: f64) -> (Point, Point) {
        match *self {
            Shape::Circle { radius } => {
                let (s, c) = (TAU * t).sin_cos();
                (
                    Point::new(radius * c, radius * s),
                    Point::new(-TAU * radius * s, TAU * radius * c),
                )
            }
            Shape::Ellipse { a, b } => {
                let (s, c) = (TAU * t).sin_cos();
                (
                    Point::new(a * c, b * s),
                    Point::new(-TAU * a * s, TAU * b * c),
                )
            }
            Shape::Square { half_side: h } => {
                let q = 4.0 * t;
                let edge = (q.floor() as i64).clamp(0, 3);
                let v = -h + 2.0 * h * (q - edge as f64);
                let rate = 8.0 * h;
                match edge {
                    0 => (Point::new(h, v), Point::new(0.0, rate)),
                    1 => (Point::new(-v, h), Point::new(-rate, 0.0)),
                    2 => (Point::new(-h, -v), Point::new(0.0, -rate)),
                    _ => (Point::new(v, -h), Point::new(rate, 0.0)),
                }
            }
            Shape::BoothOval { a, rotation } => {
                let theta = TAU * t;
                let r = 1.0 + (2.0 * theta).cos() / a;
                let dr = -2.0 * (2.0 * theta).sin() / a;
                let (s, c) = theta.sin_cos();
                let pos = Point::new(r * c, r * s);
                let vel = Point::new(TAU * (dr * c - r * s), TAU * (dr * s + r * c));
                (pos.rotated(rotation), vel.rotated(rotation))
            }
        }
    }

    fn contains_local(&self, p: Point) -> bool {
        match *self {
            Shape::Circle { radius } => p.norm() < radius,
            Shape::Ellipse { a, b } => (p.x / a).powi(2) + (p.y / b).powi(2) < 1.0,
            Shape::Square { half_side } => p.x.abs() < half_side && p.y.abs() < half_side,
            Shape::BoothOval { a, rotation } => {
                let q = p.rotated(-rotation);
                q.norm() < 1.0 + (2.0 * q.angle()).cos() / a
            }
        }
    }
}

/// Position and arclength rate `|dγ/dt|` of a boundary point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryPoint {
    pub position: Point,
    pub speed: f64,
}

const ARC_SEGMENTS: usize = 1024;
const ARC_GAUSS_POINTS: usize = 10;

/// Cumulative arclength over a fixed partition of the parameter interval.
#[derive(Clone, Debug)]
struct ArcLengthTable {
    cumulative: Vec<f64>,
    rule: GaussRule,
}

impl ArcLengthTable {
    fn build(shape: &Shape) -> Self {
        let rule = GaussRule::new(ARC_GAUSS_POINTS);
        let speed = |t: f64| {
            let (_, v) = shape.local(t);
            v.norm()
        };
        let h = 1.0 / ARC_SEGMENTS as f64;
        let mut cumulative = Vec::with_capacity(ARC_SEGMENTS + 1);
        // Neumaier-compensated running sum.
        let (mut acc, mut comp) = (0.0_f64, 0.0_f64);
        cumulative.push(0.0);
        for i in 0..ARC_SEGMENTS {
            let a = i as f64 * h;
            let piece = rule.integrate(a, a + h, speed);
            let sum = acc + piece;
            comp += if acc.abs() >= piece.abs() {
                (acc - sum) + piece
            } else {
                (piece - sum) + acc
            };
            acc = sum;
            cumulative.push(acc + comp);
        }
        Self { cumulative, rule }
    }

    fn total(&self) -> f64 {
        self.cumulative[ARC_SEGMENTS]
    }
}

/// A closed scatterer boundary placed in the plane.
///
/// The boundary is parametrised by `t` in `[0, 1)`, counterclockwise. Circles,
/// ellipses and ovals start on their positive x half-axis; the square starts
/// at its corner `(h, -h)` and runs edge by edge.
#[derive(Clone, Debug)]
pub struct Scatterer {
    shape: Shape,
    center: Point,
    arc: ArcLengthTable,
}

impl PartialEq for Scatterer {
    fn eq(&self, other: &Self) -> bool {
        self.shape == other.shape && self.center == other.center
    }
}

impl Scatterer {
    pub fn new(shape: Shape, center: Point) -> Result<Self> {
        shape.validate()?;
        if !(center.x.is_finite() && center.y.is_finite()) {
            return Err(Error::Config(format!("non-finite centre {center:?}")));
        }
        let arc = ArcLengthTable::build(&shape);
        Ok(Self { shape, center, arc })
    }

    pub fn circle(radius: f64) -> Result<Self> {
        Self::new(Shape::Circle { radius }, Point::ORIGIN)
    }

    pub fn ellipse(a: f64, b: f64) -> Result<Self> {
        Self::new(Shape::Ellipse { a, b }, Point::ORIGIN)
    }

    /// Ellipse with the given semi-major axis and eccentricity `e` in `[0, 1)`.
    pub fn ellipse_with_eccentricity(semi_major: f64, e: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&e) {
            return Err(Error::Config(format!("eccentricity must lie in [0, 1), got {e}")));
        }
        Self::ellipse(semi_major, semi_major * (1.0 - e * e).sqrt())
    }

    pub fn square(half_side: f64) -> Result<Self> {
        Self::new(Shape::Square { half_side }, Point::ORIGIN)
    }

    pub fn booth_oval(a: f64) -> Result<Self> {
        Self::new(Shape::BoothOval { a, rotation: 0.0 }, Point::ORIGIN)
    }

    /// The same shape moved to `center`.
    pub fn at(self, center: Point) -> Result<Self> {
        Self::new(self.shape, center)
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn center(&self) -> Point {
        self.center
    }

    pub fn eccentricity(&self) -> Option<f64> {
        match self.shape {
            Shape::Ellipse { a, b } => Some((1.0 - (b / a).powi(2)).sqrt()),
            Shape::Circle { .. } => Some(0.0),
            _ => None,
        }
    }

    pub fn boundary_point(&self, t: f64) -> BoundaryPoint {
        let (p, v) = self.shape.local(t.rem_euclid(1.0));
        BoundaryPoint {
            position: self.center + p,
            speed: v.norm(),
        }
    }

    pub fn speed(&self, t: f64) -> f64 {
        self.shape.local(t.rem_euclid(1.0)).1.norm()
    }

    /// True iff `p` lies strictly inside the boundary.
    pub fn point_inside(&self, p: Point) -> bool {
        self.shape.contains_local(p - self.center)
    }

    pub fn perimeter(&self) -> f64 {
        self.arc.total()
    }

    /// Fraction of the perimeter covered between parameter 0 and `t`.
    pub fn arclength_fraction(&self, t: f64) -> f64 {
        let t = t.rem_euclid(1.0);
        let seg = ((t * ARC_SEGMENTS as f64).floor() as usize).min(ARC_SEGMENTS - 1);
        let t0 = seg as f64 / ARC_SEGMENTS as f64;
        let partial = self.arc.rule.integrate(t0, t, |s| self.speed(s));
        (self.arc.cumulative[seg] + partial) / self.arc.total()
    }

    /// Parameter at which the arclength fraction reaches `u` in `[0, 1]`.
    pub fn parameter_at_arclength_fraction(&self, u: f64) -> f64 {
        let target = u.clamp(0.0, 1.0) * self.arc.total();
        let cum = &self.arc.cumulative;
        let seg = match cum.partition_point(|&c| c <= target) {
            0 => 0,
            i => (i - 1).min(ARC_SEGMENTS - 1),
        };
        let h = 1.0 / ARC_SEGMENTS as f64;
        let (mut lo, mut hi) = (seg as f64 * h, (seg + 1) as f64 * h);
        let mut t = lo + h * (target - cum[seg]) / (cum[seg + 1] - cum[seg]);
        for _ in 0..50 {
            let s = cum[seg] + self.arc.rule.integrate(seg as f64 * h, t, |x| self.speed(x));
            let f = s - target;
            if f > 0.0 {
                hi = t;
            } else {
                lo = t;
            }
            if f.abs() <= 1e-15 * self.arc.total() {
                break;
            }
            let v = self.speed(t);
            let mut next = t - f / v;
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            if (next - t).abs() < 1e-17 {
                t = next;
                break;
            }
            t = next;
        }
        if t >= 1.0 {
            t - 1.0
        } else {
            t
        }
    }

    /// Parameter `t` of a point known to lie on the boundary, for the shapes
    /// whose parametrisation can be inverted directly (circle, ellipse, square).
    pub(crate) fn parameter_of(&self, p: Point) -> Option<f64> {
        let q = p - self.center;
        let t = match self.shape {
            Shape::Circle { .. } => q.angle() / TAU,
            Shape::Ellipse { a, b } => (q.y / b).atan2(q.x / a) / TAU,
            Shape::Square { half_side: h } => {
                let (edge, s) = if q.x >= q.y.abs() {
                    (0.0, (q.y + h) / (2.0 * h))
                } else if q.y >= q.x.abs() {
                    (1.0, (h - q.x) / (2.0 * h))
                } else if -q.x >= q.y.abs() {
                    (2.0, (h - q.y) / (2.0 * h))
                } else {
                    (3.0, (q.x + h) / (2.0 * h))
                };
                (edge + s.clamp(0.0, 1.0)) / 4.0
            }
            Shape::BoothOval { .. } => return None,
        };
        Some(t.rem_euclid(1.0))
    }

    /// Winding number of the boundary polygon with `n` vertices around `p`.
    pub fn winding_number(&self, p: Point, n: usize) -> i64 {
        let mut total = 0.0;
        let mut prev = self.boundary_point(0.0).position - p;
        for i in 1..=n {
            let cur = self.boundary_point(i as f64 / n as f64).position - p;
            let cross = prev.x * cur.y - prev.y * cur.x;
            let dot = prev.x * cur.x + prev.y * cur.y;
            total += cross.atan2(dot);
            prev = cur;
        }
        (total / (2.0 * PI)).round() as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Point, b: Point, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn circle_quarter_turn() {
        let c = Scatterer::circle(1.0).unwrap();
        let bp = c.boundary_point(0.25);
        assert!(close(bp.position, Point::new(0.0, 1.0), 1e-15));
        assert!((bp.speed - TAU).abs() < 1e-14);
    }

    #[test]
    fn ellipse_anchor() {
        let e = Scatterer::ellipse(2.0, 1.0).unwrap();
        assert!(close(e.boundary_point(0.0).position, Point::new(2.0, 0.0), 1e-15));
    }

    #[test]
    fn booth_oval_anchor() {
        let o = Scatterer::booth_oval(2.0).unwrap();
        assert!(close(o.boundary_point(0.0).position, Point::new(1.5, 0.0), 1e-15));
    }

    #[test]
    fn closed_curves() {
        let shapes = [
            Scatterer::circle(1.3).unwrap(),
            Scatterer::ellipse(2.0, 0.7).unwrap(),
            Scatterer::square(1.0).unwrap(),
            Scatterer::booth_oval(3.0).unwrap(),
        ];
        for s in &shapes {
            let a = s.boundary_point(0.0).position;
            let b = s.boundary_point(1.0 - 1e-12).position;
            assert!(close(a, b, 1e-10), "{:?}", s.shape());
        }
    }

    #[test]
    fn inside_tests() {
        assert!(Scatterer::circle(1.0).unwrap().point_inside(Point::ORIGIN));
        assert!(!Scatterer::square(1.0).unwrap().point_inside(Point::new(1.0001, 0.0)));
        let oval = Scatterer::booth_oval(3.0).unwrap();
        assert!(oval.point_inside(Point::new(1.0 + 1.0 / 3.0 - 1e-6, 0.0)));
        assert!(!oval.point_inside(Point::new(1.0 + 1.0 / 3.0 + 1e-6, 0.0)));
    }

    #[test]
    fn invalid_shapes() {
        assert!(Scatterer::booth_oval(1.0).is_err());
        assert!(Scatterer::ellipse(1.0, 2.0).is_err());
        assert!(Scatterer::circle(0.0).is_err());
        assert!(Scatterer::ellipse_with_eccentricity(1.0, 1.0).is_err());
    }

    #[test]
    fn perimeters() {
        let c = Scatterer::circle(2.0).unwrap();
        assert!((c.perimeter() - 4.0 * PI).abs() < 1e-12);
        let s = Scatterer::square(1.0).unwrap();
        assert!((s.perimeter() - 8.0).abs() < 1e-12);
        // Ramanujan-free check: ellipse (2,1) perimeter 9.688448220547675...
        let e = Scatterer::ellipse(2.0, 1.0).unwrap();
        assert!((e.perimeter() - 9.688_448_220_547_675).abs() < 1e-10);
    }

    #[test]
    fn arclength_inversion_round_trip() {
        let e = Scatterer::ellipse_with_eccentricity(1.0, 0.9).unwrap();
        for i in 0..50 {
            let u = i as f64 / 50.0 + 0.003;
            let t = e.parameter_at_arclength_fraction(u);
            assert!((e.arclength_fraction(t) - u).abs() < 1e-13);
        }
    }

    #[test]
    fn square_parameter_inverse() {
        let s = Scatterer::square(1.5).unwrap().at(Point::new(0.3, -2.0)).unwrap();
        for i in 0..40 {
            let t = (i as f64 + 0.37) / 40.0;
            let p = s.boundary_point(t).position;
            assert!((s.parameter_of(p).unwrap() - t).abs() < 1e-14);
        }
    }
}
