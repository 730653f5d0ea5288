//! The square under three sampling densities: K(41) and the least-squares
//! boundary error at the practical sample budget.

use scatter::geometry::{BoundaryDensity, DensityKind, Point, Scatterer};
use scatter::solver::{boundary_error, solve_least_squares, MultipoleFamily, ScatteringProblem, DEFAULT_TRUNCATION};
use scatter::stability::{estimate_k, practical_budget};

fn main() -> scatter::Result<()> {
    let square = Scatterer::square(1.0)?;
    let order = 20;
    for kind in [DensityKind::UniformArclength, DensityKind::KmSquare, DensityKind::ChebyshevSquare] {
        let d = BoundaryDensity::new(kind, square.clone())?;
        let k = estimate_k(&[MultipoleFamily::new(Point::ORIGIN, 6.0, order)?], &d)?.k_value;
        let n_s = practical_budget(k)?;
        let p = ScatteringProblem::single(d, 6.0, order, 0.0)?;
        let sol = solve_least_squares(&p, &[n_s], 0.0, DEFAULT_TRUNCATION)?;
        let err = boundary_error(&sol, std::slice::from_ref(&square), &p.incident(), 8 * p.dimension())?;
        println!("{kind:<18} K = {k:>7.2}  N_s = {n_s:>4}  boundary error = {err:.3e}");
    }
    Ok(())
}
