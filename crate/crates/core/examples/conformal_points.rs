//! KM sample points: images of equispaced unit-circle points under the
//! disk-to-ellipse and disk-to-square maps, next to arclength-uniform points.

use scatter::geometry::{BoundaryDensity, DensityKind, Scatterer};

fn show(label: &str, d: &BoundaryDensity, n: usize) -> scatter::Result<()> {
    println!("{label}");
    for s in d.sample_points(n, 0.0)? {
        println!("  t = {:.4}  ({:+.4}, {:+.4})", s.t, s.position.x, s.position.y);
    }
    Ok(())
}

fn main() -> scatter::Result<()> {
    let ellipse = Scatterer::ellipse_with_eccentricity(1.0, 0.9)?;
    show("ellipse e = 0.9, uniform arclength", &BoundaryDensity::new(DensityKind::UniformArclength, ellipse.clone())?, 12)?;
    show("ellipse e = 0.9, KM", &BoundaryDensity::new(DensityKind::KmEllipse, ellipse)?, 12)?;

    let square = Scatterer::square(1.0)?;
    show("square, KM", &BoundaryDensity::new(DensityKind::KmSquare, square.clone())?, 12)?;
    show("square, Chebyshev", &BoundaryDensity::new(DensityKind::ChebyshevSquare, square)?, 12)?;
    Ok(())
}
