//! The circle has a closed-form solution. Compare collocation and least
//! squares against it as the order grows.

use scatter::geometry::{BoundaryDensity, DensityKind, Scatterer};
use scatter::solver::{
    analytic_circle_solution, boundary_error, solve_collocation, solve_least_squares, ScatteringProblem,
    DEFAULT_TRUNCATION,
};

fn main() -> scatter::Result<()> {
    let (k, angle) = (6.0, 0.3);
    let circle = Scatterer::circle(1.0)?;
    let density = BoundaryDensity::new(DensityKind::UniformArclength, circle.clone())?;
    println!("{:>4} {:>12} {:>12} {:>12} {:>12}", "N_h", "colloc coef", "colloc bdry", "ls coef", "ls bdry");
    for order in [4, 8, 12, 16, 20, 24] {
        let p = ScatteringProblem::single(density.clone(), k, order, angle)?;
        let exact = analytic_circle_solution(1.0, k, angle, order)?;
        let diff = |c: &[num_complex::Complex64]| c.iter().zip(&exact).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        let col = solve_collocation(&p, 0.0)?;
        let ls = solve_least_squares(&p, &[4 * p.dimension()], 0.0, DEFAULT_TRUNCATION)?;
        let m_eval = 8 * p.dimension();
        let s = std::slice::from_ref(&circle);
        println!(
            "{order:>4} {:>12.2e} {:>12.2e} {:>12.2e} {:>12.2e}",
            diff(&col.coefficients),
            boundary_error(&col, s, &p.incident(), m_eval)?,
            diff(&ls.coefficients),
            boundary_error(&ls, s, &p.incident(), m_eval)?,
        );
    }
    Ok(())
}
