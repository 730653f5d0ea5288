//! K(m) against eccentricity for uniform and KM densities at k = 6.

use scatter::geometry::{BoundaryDensity, DensityKind, Point, Scatterer};
use scatter::solver::MultipoleFamily;
use scatter::stability::estimate_k;

fn main() -> scatter::Result<()> {
    let orders = [5, 10, 15, 20, 25];
    print!("{:>5} {:>8}", "e", "density");
    for n in orders {
        print!(" {:>8}", format!("m={}", 2 * n + 1));
    }
    println!();
    for i in 0..=9 {
        let e = 0.1 * i as f64;
        let s = Scatterer::ellipse_with_eccentricity(1.0, e)?;
        for kind in [DensityKind::UniformArclength, DensityKind::KmEllipse] {
            let d = BoundaryDensity::new(kind, s.clone())?;
            print!("{e:>5.2} {:>8}", if kind == DensityKind::KmEllipse { "km" } else { "uniform" });
            for n in orders {
                let k = estimate_k(&[MultipoleFamily::new(Point::ORIGIN, 6.0, n)?], &d)?;
                print!(" {:>8.2}", k.k_value);
            }
            println!();
        }
    }
    Ok(())
}
