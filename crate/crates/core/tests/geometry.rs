mod common;

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use proptest::prelude::*;
use scatter::geometry::{
    sc_square_map, BoundaryDensity, DensityKind, EllipseMap, Point, Scatterer, SquareMap,
};

use common::{adaptive_simpson, square_integral};

#[test]
fn ellipse_map_boundary_lies_on_ellipse() {
    for &a in &[1.5, 2.0, 3.2] {
        let map = EllipseMap::new(a).unwrap();
        for j in 0..64 {
            let w = map.map(Complex64::from_polar(1.0, TAU * j as f64 / 64.0)).unwrap();
            let r = (w.re / a).powi(2) + w.im * w.im - 1.0;
            assert!(r.abs() < 1e-8, "a = {a}, j = {j}: {r}");
        }
    }
}

#[test]
fn ellipse_map_is_conformal_inside() {
    // f(conj z) = conj f(z) and the interior maps strictly inside.
    let map = EllipseMap::new(2.0).unwrap();
    for &z in &[Complex64::new(0.3, 0.4), Complex64::new(-0.6, 0.1), Complex64::new(0.0, -0.9)] {
        let w = map.map(z).unwrap();
        assert!((map.map(z.conj()).unwrap() - w.conj()).norm() < 1e-13);
        assert!((w.re / 2.0).powi(2) + w.im * w.im < 1.0);
    }
}

#[test]
fn square_map_matches_path_integral() {
    for &z in &[Complex64::new(0.2, 0.1), Complex64::new(-0.5, 0.6), Complex64::new(0.7, -0.6), Complex64::new(0.0, 0.93)] {
        let want = square_integral(z);
        let got = sc_square_map(z).unwrap();
        assert!((got - want).norm() < 1e-11, "{z}: {got} vs {want}");
    }
}

#[test]
fn square_map_corners_and_rotation() {
    let i = Complex64::new(0.0, 1.0);
    let z = Complex64::new(0.41, -0.27);
    assert!((sc_square_map(i * z).unwrap() - i * sc_square_map(z).unwrap()).norm() < 1e-10);
    let map = SquareMap::new(1.0).unwrap();
    let corners = [(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)];
    for (j, (x, y)) in corners.iter().enumerate() {
        let w = map.map(i.powi(j as i32)).unwrap();
        assert!((w - Complex64::new(*x, *y)).norm() < 1e-8, "corner {j}: {w}");
    }
}

#[test]
fn square_map_edge_midpoints() {
    let map = SquareMap::new(0.5).unwrap();
    let w = map.map(Complex64::from_polar(1.0, PI / 4.0)).unwrap();
    assert!((w - Complex64::new(0.0, 0.5)).norm() < 1e-12);
}

fn total_mass(d: &BoundaryDensity) -> f64 {
    let pieces = 64;
    (0..pieces)
        .map(|p| {
            let (a, b) = (p as f64 / pieces as f64, (p + 1) as f64 / pieces as f64);
            adaptive_simpson(&|t| d.weight(t).unwrap(), a, b, 1e-12)
        })
        .sum()
}

#[test]
fn smooth_densities_have_unit_mass() {
    let cases = [
        (DensityKind::UniformArclength, Scatterer::ellipse(2.0, 1.0).unwrap()),
        (DensityKind::UniformArclength, Scatterer::booth_oval(2.0).unwrap()),
        (DensityKind::UniformParameter, Scatterer::booth_oval(3.0).unwrap()),
        (DensityKind::KmEllipse, Scatterer::ellipse_with_eccentricity(1.0, 0.8).unwrap()),
        (DensityKind::StretchedCircleEllipse, Scatterer::ellipse(1.0, 0.6).unwrap()),
        (DensityKind::UniformArclength, Scatterer::square(1.0).unwrap()),
    ];
    for (kind, s) in cases {
        let d = BoundaryDensity::new(kind, s).unwrap();
        let mass = total_mass(&d);
        assert!((mass - 1.0).abs() < 1e-7, "{kind}: {mass}");
    }
}

#[test]
fn chebyshev_density_follows_arcsine_law() {
    // Mass of edge fraction [s0, s1] under the arcsine law is (acos(1 - 2 s1) - acos(1 - 2 s0)) / π,
    // shared equally among four edges.
    let d = BoundaryDensity::new(DensityKind::ChebyshevSquare, Scatterer::square(1.0).unwrap()).unwrap();
    let (s0, s1): (f64, f64) = (1e-4, 1.0 - 1e-4);
    let want = ((1.0 - 2.0 * s1).acos() - (1.0 - 2.0 * s0).acos()) / PI;
    for edge in 0..4 {
        let (a, b) = ((edge as f64 + s0) / 4.0, (edge as f64 + s1) / 4.0);
        let mass = adaptive_simpson(&|t| d.weight(t).unwrap(), a, b, 1e-12);
        assert!((4.0 * mass - want).abs() < 1e-8, "edge {edge}: {} vs {want}", 4.0 * mass);
    }
}

#[test]
fn km_square_has_unit_mass() {
    let d = BoundaryDensity::new(DensityKind::KmSquare, Scatterer::square(1.0).unwrap()).unwrap();
    let mass: f64 = (0..16)
        .map(|p| adaptive_simpson(&|t| d.weight(t).unwrap(), p as f64 / 16.0, (p + 1) as f64 / 16.0, 1e-9))
        .sum();
    assert!((mass - 1.0).abs() < 1e-6, "{mass}");
}

#[test]
fn km_square_concentrates_at_edge_midpoints() {
    let d = BoundaryDensity::new(DensityKind::KmSquare, Scatterer::square(1.0).unwrap()).unwrap();
    // Edge midpoint t = 1/8 versus near the corner t = 0.01.
    assert!(d.weight(0.125).unwrap() > d.weight(0.01).unwrap());
    let c = BoundaryDensity::new(DensityKind::ChebyshevSquare, Scatterer::square(1.0).unwrap()).unwrap();
    assert!(c.weight(0.125).unwrap() < c.weight(0.01).unwrap());
}

#[test]
fn km_ellipse_concentrates_on_flat_sides() {
    let d = BoundaryDensity::new(DensityKind::KmEllipse, Scatterer::ellipse_with_eccentricity(1.0, 0.95).unwrap()).unwrap();
    let u = BoundaryDensity::new(DensityKind::UniformArclength, Scatterer::ellipse_with_eccentricity(1.0, 0.95).unwrap()).unwrap();
    // Relative to arclength, KM puts less mass at the tips (t = 0) than at the flat sides (t = 1/4).
    let tip = d.arclength_weight(0.0).unwrap() / u.arclength_weight(0.0).unwrap();
    let side = d.arclength_weight(0.25).unwrap() / u.arclength_weight(0.25).unwrap();
    assert!(tip < side);
}

#[test]
fn ellipse_perimeter_matches_quadrature() {
    let s = Scatterer::ellipse(2.0, 1.0).unwrap();
    let want = adaptive_simpson(&|t: f64| TAU * (4.0 * (TAU * t).sin().powi(2) + (TAU * t).cos().powi(2)).sqrt(), 0.0, 1.0, 1e-13);
    assert!((s.perimeter() - want).abs() < 1e-10);
}

#[test]
fn oval_boundary_follows_polar_curve() {
    let s = Scatterer::booth_oval(2.0).unwrap().at(Point::new(1.0, -1.0)).unwrap();
    for j in 0..32 {
        let t = j as f64 / 32.0;
        let p = s.boundary_point(t).position - Point::new(1.0, -1.0);
        let theta = TAU * t;
        assert!((p.norm() - (1.0 + (2.0 * theta).cos() / 2.0)).abs() < 1e-14);
    }
}

#[test]
fn winding_numbers() {
    let s = Scatterer::square(1.0).unwrap();
    assert_eq!(s.winding_number(Point::new(0.2, 0.3), 400), 1);
    assert_eq!(s.winding_number(Point::new(3.0, 0.0), 400), 0);
    let o = Scatterer::booth_oval(3.0).unwrap();
    assert_eq!(o.winding_number(Point::ORIGIN, 400), 1);
}

fn shape_strategy() -> impl Strategy<Value = Scatterer> {
    prop_oneof![
        (0.2f64..3.0).prop_map(|r| Scatterer::circle(r).unwrap()),
        (0.0f64..0.95).prop_map(|e| Scatterer::ellipse_with_eccentricity(1.0, e).unwrap()),
        (0.2f64..2.0).prop_map(|h| Scatterer::square(h).unwrap()),
        (1.2f64..6.0).prop_map(|a| Scatterer::booth_oval(a).unwrap()),
    ]
}

proptest! {
    #[test]
    fn inside_test_agrees_with_winding(s in shape_strategy(), x in -3.0f64..3.0, y in -3.0f64..3.0) {
        let p = Point::new(x, y);
        let w = s.winding_number(p, 2000);
        // Points within a hair of the boundary are skipped.
        let near = (0..2000).any(|j| (s.boundary_point(j as f64 / 2000.0).position - p).norm() < 1e-2);
        prop_assume!(!near);
        prop_assert_eq!(s.point_inside(p), w == 1);
    }

    #[test]
    fn quantiles_are_ordered(e in 0.0f64..0.95, n in 2usize..60) {
        let s = Scatterer::ellipse_with_eccentricity(1.0, e).unwrap();
        for kind in [DensityKind::UniformArclength, DensityKind::KmEllipse, DensityKind::StretchedCircleEllipse] {
            let d = BoundaryDensity::new(kind, s.clone()).unwrap();
            let ts = d.quantile_parameters(n, 0.0).unwrap();
            for w in ts.windows(2) {
                prop_assert!(w[1] > w[0]);
            }
        }
    }

    #[test]
    fn square_quantiles_are_ordered(n in 2usize..80, shift in 0.0f64..1.0) {
        let sq = Scatterer::square(1.0).unwrap();
        for kind in [DensityKind::UniformArclength, DensityKind::KmSquare, DensityKind::ChebyshevSquare] {
            let d = BoundaryDensity::new(kind, sq.clone()).unwrap();
            let ts = d.quantile_parameters(n, shift).unwrap();
            prop_assert!(ts.iter().all(|t| (0.0..1.0).contains(t)));
            for w in ts.windows(2) {
                prop_assert!(w[1] > w[0]);
            }
        }
    }

    #[test]
    fn cdf_inverts_quantile(u in 0.001f64..0.999) {
        let sq = Scatterer::square(1.0).unwrap();
        let el = Scatterer::ellipse_with_eccentricity(1.0, 0.9).unwrap();
        let ds = [
            BoundaryDensity::new(DensityKind::KmSquare, sq.clone()).unwrap(),
            BoundaryDensity::new(DensityKind::ChebyshevSquare, sq).unwrap(),
            BoundaryDensity::new(DensityKind::KmEllipse, el.clone()).unwrap(),
            BoundaryDensity::new(DensityKind::UniformArclength, el).unwrap(),
        ];
        for d in &ds {
            let t = d.inverse_cdf(u).unwrap();
            prop_assert!((d.cdf(t).unwrap() - u).abs() < 1e-9);
        }
    }

    #[test]
    fn ellipse_map_boundary_property(a in 1.05f64..6.0, phi in 0.0f64..TAU) {
        let map = EllipseMap::new(a).unwrap();
        let w = map.map(Complex64::from_polar(1.0, phi)).unwrap();
        prop_assert!(((w.re / a).powi(2) + w.im * w.im - 1.0).abs() < 1e-8);
    }
}
