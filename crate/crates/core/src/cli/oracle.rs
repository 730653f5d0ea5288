//! Self-test: special-function identities and circle-oracle equivalence.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::error::Result;
use crate::geometry::{BoundaryDensity, DensityKind, Point, Scatterer};
use crate::quad::GaussRule;
use crate::solver::{
    analytic_circle_solution, boundary_error, solve_collocation, solve_least_squares, MultipoleFamily,
    ScatterSolution, ScatteringProblem, DEFAULT_TRUNCATION,
};
use crate::specfun::{carlson_rf, cylinder, elliptic_k, hankel1, wronskian_jy};

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, value: f64, bound: f64) -> Check {
    Check {
        name,
        passed: value < bound,
        detail: format!("{value:.3e} < {bound:.0e}"),
    }
}

fn wronskian_check() -> Result<Check> {
    let mut worst = 0.0_f64;
    for &x in &[0.05, 0.5, 1.0, 6.0, 10.0, 30.0, 100.0] {
        for n in -150..=150 {
            let c = cylinder(n, x)?;
            let w = wronskian_jy(x);
            worst = worst.max(((c.wronskian() - w) / w).abs());
        }
    }
    Ok(check("wronskian", worst, 1e-10))
}

fn elliptic_k_check() -> Result<Check> {
    let rule = GaussRule::new(40);
    let mut worst = 0.0_f64;
    for i in 1..=9 {
        let k = i as f64 / 10.0;
        let pieces = 8;
        let h = FRAC_PI_2 / pieces as f64;
        let q: f64 = (0..pieces)
            .map(|p| {
                rule.integrate(p as f64 * h, (p + 1) as f64 * h, |t| {
                    1.0 / (1.0 - (k * t.sin()).powi(2)).sqrt()
                })
            })
            .sum();
        worst = worst.max((elliptic_k(k)? - q).abs() / q);
    }
    Ok(check("elliptic_k", worst, 1e-12))
}

fn carlson_check() -> Result<Check> {
    let c = |x: f64| Complex64::new(x, 0.0);
    // R_F(0, 1, 2) and R_F(x, x, x) = 1/sqrt(x)
    let a = (carlson_rf(c(0.0), c(1.0), c(2.0))?.re - 1.311_028_777_146_059_9).abs();
    let b = (carlson_rf(c(4.0), c(4.0), c(4.0))?.re - 0.5).abs();
    let lemniscate = (carlson_rf(c(0.0), c(1.0), c(1.0))?.re - FRAC_PI_2).abs();
    Ok(check("carlson_rf", a.max(b).max(lemniscate), 1e-14))
}

fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn circle_checks(fault: bool) -> Result<Vec<Check>> {
    let (k, angle, order) = (6.0, 0.3, 20);
    let boundary = BoundaryDensity::new(DensityKind::UniformArclength, Scatterer::circle(1.0)?)?;
    let problem = ScatteringProblem::single(boundary, k, order, angle)?;
    let mut exact = analytic_circle_solution(1.0, k, angle, order)?;
    if fault {
        exact[order] += Complex64::new(1e-3, 0.0);
    }
    let exact_sol = ScatterSolution::from_coefficients(problem.families().to_vec(), exact.clone())?;
    let m_eval = 8 * exact.len();
    let oracle_err = boundary_error(&exact_sol, &problem.scatterers(), &problem.incident(), m_eval)?;

    let col = solve_collocation(&problem, 0.0)?;
    let ls = solve_least_squares(&problem, &[100], 0.0, DEFAULT_TRUNCATION)?;
    Ok(vec![
        check("circle_oracle_boundary", oracle_err, 1e-9),
        check("circle_collocation", max_diff(&col.coefficients, &exact), 1e-9),
        check("circle_least_squares", max_diff(&ls.coefficients, &exact), 1e-9),
    ])
}

fn field_check() -> Result<Check> {
    // Scattered field of the analytic solution at radius 3 against a direct
    // Hankel sum built from the same coefficients.
    let (k, order) = (6.0, 30);
    let exact = analytic_circle_solution(1.0, k, 0.0, order)?;
    let family = MultipoleFamily::new(Point::ORIGIN, k, order)?;
    let sol = ScatterSolution::from_coefficients(vec![family], exact.clone())?;
    let p = Point::new(3.0 * (0.4f64).cos(), 3.0 * (0.4f64).sin());
    let mut direct = Complex64::new(0.0, 0.0);
    for (idx, a) in exact.iter().enumerate() {
        let n = idx as i32 - order as i32;
        let h = hankel1(n, 3.0 * k)?.value;
        direct += a * h * Complex64::from_polar(1.0, n as f64 * 0.4);
    }
    let got = sol.scattered_field(p)?;
    Ok(check("field_series", (got - direct).norm(), 1e-10))
}

/// Runs every check; `fault` perturbs the oracle so the circle checks fail.
pub fn cmd_oracle_check(fault: bool) -> Result<Vec<Check>> {
    let mut out = vec![wronskian_check()?, elliptic_k_check()?, carlson_check()?];
    out.extend(circle_checks(fault)?);
    out.push(field_check()?);
    Ok(out)
}
