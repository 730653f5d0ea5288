//! Boundary error against order for a thin ellipse (e = 0.86, k = 10):
//! collocation on uniform points diverges, KM points or oversampled least
//! squares stay stable.

use scatter::geometry::{BoundaryDensity, DensityKind, Point, Scatterer};
use scatter::solver::{
    boundary_error, solve_collocation, solve_least_squares, MultipoleFamily, ScatteringProblem, DEFAULT_TRUNCATION,
};
use scatter::stability::{estimate_k, practical_budget};

fn main() -> scatter::Result<()> {
    let k = 10.0;
    let s = Scatterer::ellipse_with_eccentricity(1.0, 0.86)?;
    let uniform = BoundaryDensity::new(DensityKind::UniformArclength, s.clone())?;
    let km = BoundaryDensity::new(DensityKind::KmEllipse, s.clone())?;
    println!("{:>4} {:>14} {:>14} {:>14}", "N_h", "colloc unif", "colloc KM", "LS unif");
    for order in (5..=40).step_by(5) {
        let err = |d: &BoundaryDensity, ls: bool| -> scatter::Result<f64> {
            let p = ScatteringProblem::single(d.clone(), k, order, 0.0)?;
            let sol = if ls {
                let kv = estimate_k(&[MultipoleFamily::new(Point::ORIGIN, k, order)?], d)?.k_value;
                solve_least_squares(&p, &[practical_budget(kv)?], 0.0, DEFAULT_TRUNCATION)?
            } else {
                solve_collocation(&p, 0.0)?
            };
            boundary_error(&sol, std::slice::from_ref(&s), &p.incident(), 8 * p.dimension())
        };
        println!("{order:>4} {:>14.3e} {:>14.3e} {:>14.3e}", err(&uniform, false)?, err(&km, false)?, err(&uniform, true)?);
    }
    Ok(())
}
