//! Two Booth ovals hit by a plane wave at angle 0.3. Solves by least squares
//! with the practical budget per oval and writes `two_ovals.pgm` of |u| to
//! the directory given as the first argument (default: current directory).

use std::path::PathBuf;

use scatter::cli::render_pgm;
use scatter::geometry::{BoundaryDensity, DensityKind, Point, Scatterer};
use scatter::solver::{
    boundary_error, evaluate_field, solve_least_squares, GridSpec, IncidentField, MultipoleFamily, ScatteringProblem,
    DEFAULT_TRUNCATION,
};
use scatter::stability::{estimate_k, practical_budget};

fn main() -> scatter::Result<()> {
    let out = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("."));
    let (k, order) = (6.0, 65);
    let ovals = [
        Scatterer::booth_oval(2.0)?.at(Point::new(-2.0, 0.0))?,
        Scatterer::booth_oval(3.0)?.at(Point::new(2.0, 0.0))?,
    ];
    let mut densities = Vec::new();
    let mut families = Vec::new();
    let mut counts = Vec::new();
    for s in &ovals {
        let d = BoundaryDensity::new(DensityKind::UniformParameter, s.clone())?;
        let f = MultipoleFamily::new(s.center(), k, order)?;
        let est = estimate_k(&[f], &d)?;
        println!("oval centre ({:+}, 0): K = {:.1}{}", s.center().x, est.k_value, if est.rank_deficient { " (rank-deficient)" } else { "" });
        counts.push(practical_budget(est.k_value)?);
        densities.push(d);
        families.push(f);
    }
    let incident = IncidentField::plane_wave(0.3, k);
    let problem = ScatteringProblem::new(densities, families, incident)?;
    let sol = solve_least_squares(&problem, &counts, 0.0, DEFAULT_TRUNCATION)?;
    let err = boundary_error(&sol, &ovals, &incident, 8 * problem.dimension())?;
    println!("m = {}, N_s = {}, rank = {}, boundary error = {err:.3e}", problem.dimension(), sol.sample_count, sol.rank);

    let grid = GridSpec { x_min: -5.0, y_min: -3.0, spacing: 0.04, nx: 251, ny: 151 };
    let field = evaluate_field(&sol, &grid, &ovals, &incident, true)?;
    let path = out.join("two_ovals.pgm");
    std::fs::write(&path, render_pgm(&field, Some(2.0)))?;
    println!("max |u| = {:.3}, wrote {}", field.max_abs(), path.display());
    Ok(())
}
