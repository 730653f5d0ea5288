use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::config::{shape_name, shape_parameter, Case, ExperimentConfig, KQuadrature, SampleRule};
use super::output::{num, render_pgm, Table, VERSION};
use crate::error::{Error, Result};
use crate::geometry::{BoundaryDensity, DensityKind, Scatterer};
use crate::solver::{
    boundary_error, evaluate_field, solve_collocation, solve_least_squares, IncidentField, MultipoleFamily,
    ScatterSolution, ScatteringProblem, SolveMethod,
};
use crate::stability::{estimate_k_with, practical_budget, sample_budget, KEstimate, QuadratureRule};

/// Short status tag for a failed row.
pub fn status_of(e: &Error) -> &'static str {
    match e {
        Error::Domain(_) => "domain",
        Error::Overflow(_) => "overflow",
        Error::Numerical(_) => "numerical",
        Error::Singular { .. } => "singular",
        Error::Config(_) => "config",
        Error::Io(_) => "io",
    }
}

fn table_for(cfg: &ExperimentConfig, command: &str, header: &[&str]) -> Table {
    let mut t = Table::new(header);
    t.meta("scatter", VERSION)
        .meta("command", command)
        .meta("config_sha256", cfg.hash())
        .meta("seed", cfg.seed);
    t
}

fn k_estimate(cfg: &ExperimentConfig, scatterer: &Scatterer, density: DensityKind, order: usize, salt: u64) -> Result<KEstimate> {
    let d = BoundaryDensity::new(density, scatterer.clone())?;
    let families = vec![MultipoleFamily::new(scatterer.center(), cfg.wavenumber, order)?];
    let m = 2 * order + 1;
    let m_q = cfg.quadrature_factor * m;
    let rule = match cfg.k_quadrature {
        KQuadrature::Quantile => QuadratureRule::Quantile,
        KQuadrature::Random => QuadratureRule::Random {
            seed: cfg.seed.wrapping_add(salt),
        },
    };
    estimate_k_with(&families, &d, m_q, cfg.refinement * m_q, rule)
}

fn ensure_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    Ok(())
}

/// K(m) for every case, scatterer, density and order. Writes `<name>.csv`.
pub fn cmd_kcurve(cfg: &ExperimentConfig, out_dir: &Path) -> Result<PathBuf> {
    let cases = cfg.cases()?;
    let mut jobs = Vec::new();
    for (c, case) in cases.iter().enumerate() {
        for (s, sc) in case.scatterers.iter().enumerate() {
            for &d in &cfg.densities {
                for &n in &cfg.orders {
                    jobs.push((c, s, sc, d, n));
                }
            }
        }
    }
    let results: Vec<Result<KEstimate>> = jobs
        .par_iter()
        .enumerate()
        .map(|(j, &(_, _, sc, d, n))| k_estimate(cfg, sc, d, n, j as u64))
        .collect();

    let mut t = table_for(
        cfg,
        "kcurve",
        &[
            "case", "scatterer", "shape", "shape_param", "density", "order", "m", "k", "quadrature_size",
            "evaluation_size", "discarded", "rank_deficient", "status",
        ],
    );
    for (&(c, s, sc, d, n), r) in jobs.iter().zip(results) {
        let mut row = vec![
            c.to_string(),
            s.to_string(),
            shape_name(sc).to_string(),
            num(shape_parameter(sc)),
            d.name().to_string(),
            n.to_string(),
            (2 * n + 1).to_string(),
        ];
        match r {
            Ok(k) => row.extend([
                num(k.k_value),
                k.quadrature_size.to_string(),
                k.evaluation_size.to_string(),
                k.discarded.to_string(),
                k.rank_deficient.to_string(),
                "ok".to_string(),
            ]),
            Err(e) => row.extend([
                num(f64::NAN),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                status_of(&e).to_string(),
            ]),
        }
        t.push(row);
    }
    ensure_dir(out_dir)?;
    let path = out_dir.join(format!("{}.csv", cfg.name_or("kcurve")));
    t.write(&path)?;
    Ok(path)
}

fn problem_for(cfg: &ExperimentConfig, case: &Case, density: DensityKind, order: usize) -> Result<ScatteringProblem> {
    let boundaries = case
        .scatterers
        .iter()
        .map(|s| BoundaryDensity::new(density, s.clone()))
        .collect::<Result<Vec<_>>>()?;
    let families = case
        .scatterers
        .iter()
        .map(|s| MultipoleFamily::new(s.center(), cfg.wavenumber, order))
        .collect::<Result<Vec<_>>>()?;
    ScatteringProblem::new(boundaries, families, IncidentField::plane_wave(cfg.incident_angle, cfg.wavenumber))
}

/// Per-scatterer sample counts for least squares, one vector per solve.
fn ls_counts(rule: &SampleRule, ks: &[Result<f64>], per_scatterer_m: &[usize]) -> Vec<Result<Vec<usize>>> {
    let from_k = |f: &dyn Fn(f64) -> Result<usize>| -> Result<Vec<usize>> {
        ks.iter()
            .map(|k| match k {
                Ok(k) => f(*k),
                Err(e) => Err(Error::Numerical(format!("K unavailable: {e}"))),
            })
            .collect()
    };
    match rule {
        SampleRule::Explicit { counts } => counts.iter().map(|&c| Ok(vec![c; ks.len()])).collect(),
        SampleRule::Practical => vec![from_k(&|k| practical_budget(k))],
        SampleRule::Theorem { r, n_max } => vec![from_k(&|k| Ok(sample_budget(k, *n_max, *r)?.n))],
        SampleRule::Collocation => vec![Ok(per_scatterer_m.to_vec())],
    }
}

fn error_points(cfg: &ExperimentConfig, m: usize) -> usize {
    cfg.error_points.unwrap_or(0).max(8 * m)
}

struct SolveRow {
    method: SolveMethod,
    n_s: Option<usize>,
    result: Result<(ScatterSolution, f64)>,
}

fn solve_and_score(cfg: &ExperimentConfig, problem: &ScatteringProblem, method: SolveMethod, counts: Option<&[usize]>) -> Result<(ScatterSolution, f64)> {
    let sol = match (method, counts) {
        (SolveMethod::Collocation, _) => solve_collocation(problem, cfg.offset)?,
        (SolveMethod::LeastSquares, Some(c)) => solve_least_squares(problem, c, cfg.offset, cfg.truncation)?,
        (SolveMethod::LeastSquares, None) => return Err(Error::Config("missing sample counts".into())),
    };
    let err = boundary_error(&sol, &problem.scatterers(), &problem.incident(), error_points(cfg, problem.dimension()))?;
    Ok((sol, err))
}

/// Boundary error against order for each density, method and sample count.
/// Writes `<name>.csv`.
pub fn cmd_sweep_order(cfg: &ExperimentConfig, out_dir: &Path) -> Result<PathBuf> {
    let cases = cfg.cases()?;
    let mut jobs = Vec::new();
    for (c, case) in cases.iter().enumerate() {
        for &d in &cfg.densities {
            for &n in &cfg.orders {
                jobs.push((c, case, d, n));
            }
        }
    }
    let results: Vec<(Result<f64>, Vec<SolveRow>)> = jobs
        .par_iter()
        .enumerate()
        .map(|(j, &(_, case, d, n))| {
            let ks: Vec<Result<f64>> = case
                .scatterers
                .iter()
                .enumerate()
                .map(|(s, sc)| k_estimate(cfg, sc, d, n, (j * 1024 + s) as u64).map(|k| k.k_value))
                .collect();
            let k_total = ks.iter().try_fold(0.0, |acc, k| match k {
                Ok(k) => Ok(acc + k),
                Err(e) => Err(Error::Numerical(format!("K unavailable: {e}"))),
            });
            let problem = match problem_for(cfg, case, d, n) {
                Ok(p) => p,
                Err(e) => {
                    let rows = cfg
                        .methods
                        .iter()
                        .map(|&method| SolveRow {
                            method,
                            n_s: None,
                            result: Err(Error::Config(e.to_string())),
                        })
                        .collect();
                    return (k_total, rows);
                }
            };
            let per_m = problem.collocation_counts();
            let mut rows = Vec::new();
            for &method in &cfg.methods {
                match method {
                    SolveMethod::Collocation => rows.push(SolveRow {
                        method,
                        n_s: Some(problem.dimension()),
                        result: solve_and_score(cfg, &problem, method, None),
                    }),
                    SolveMethod::LeastSquares => {
                        for counts in ls_counts(&cfg.samples, &ks, &per_m) {
                            rows.push(match counts {
                                Ok(c) => SolveRow {
                                    method,
                                    n_s: Some(c.iter().sum()),
                                    result: solve_and_score(cfg, &problem, method, Some(&c)),
                                },
                                Err(e) => SolveRow {
                                    method,
                                    n_s: None,
                                    result: Err(e),
                                },
                            });
                        }
                    }
                }
            }
            (k_total, rows)
        })
        .collect();

    let mut t = table_for(
        cfg,
        "sweep-order",
        &[
            "case", "shape_param", "density", "method", "order", "m", "n_s", "k", "k_matched", "boundary_error",
            "rank", "residual_norm", "condition", "status",
        ],
    );
    for (&(c, case, d, n), (k_total, rows)) in jobs.iter().zip(results) {
        let m = case.scatterers.len() * (2 * n + 1);
        let k = k_total.as_ref().copied().unwrap_or(f64::NAN);
        for r in rows {
            let matched = r.n_s.map(|ns| (ns as f64 - k).abs() <= 1.0).unwrap_or(false);
            let mut row = vec![
                c.to_string(),
                num(shape_parameter(&case.scatterers[0])),
                d.name().to_string(),
                r.method.name().to_string(),
                n.to_string(),
                m.to_string(),
                r.n_s.map(|v| v.to_string()).unwrap_or_default(),
                num(k),
                matched.to_string(),
            ];
            match r.result {
                Ok((sol, err)) => row.extend([
                    num(err),
                    sol.rank.to_string(),
                    num(sol.residual_norm),
                    sol.condition.map(num).unwrap_or_default(),
                    "ok".to_string(),
                ]),
                Err(e) => {
                    let cond = match &e {
                        Error::Singular { condition } => num(*condition),
                        _ => String::new(),
                    };
                    row.extend([num(f64::NAN), String::new(), String::new(), cond, status_of(&e).to_string()]);
                }
            }
            t.push(row);
        }
    }
    ensure_dir(out_dir)?;
    let path = out_dir.join(format!("{}.csv", cfg.name_or("sweep_order")));
    t.write(&path)?;
    Ok(path)
}

/// Solves the first case with the first density and order by every listed
/// method, writing `<name>_<method>.pgm` and `coeffs_<name>_<method>.csv`.
pub fn cmd_field(cfg: &ExperimentConfig, out_dir: &Path) -> Result<Vec<PathBuf>> {
    let grid = cfg
        .grid
        .ok_or_else(|| Error::Config("grid: required for field renders".into()))?;
    let cases = cfg.cases()?;
    let case = &cases[0];
    let density = cfg.densities[0];
    let order = cfg.orders[0];
    let problem = problem_for(cfg, case, density, order)?;
    let per_m = problem.collocation_counts();
    let name = cfg.name_or("field");
    ensure_dir(out_dir)?;
    let mut written = Vec::new();
    for &method in &cfg.methods {
        let counts = match method {
            SolveMethod::Collocation => per_m.clone(),
            SolveMethod::LeastSquares => {
                let ks: Vec<Result<f64>> = case
                    .scatterers
                    .iter()
                    .enumerate()
                    .map(|(s, sc)| k_estimate(cfg, sc, density, order, s as u64).map(|k| k.k_value))
                    .collect();
                ls_counts(&cfg.samples, &ks, &per_m)
                    .into_iter()
                    .next()
                    .expect("at least one count vector")?
            }
        };
        let (sol, err) = solve_and_score(cfg, &problem, method, Some(&counts))?;
        let field = evaluate_field(&sol, &grid, &case.scatterers, &problem.incident(), cfg.include_incident)?;
        let stem = format!("{name}_{}", method.name());
        let pgm = out_dir.join(format!("{stem}.pgm"));
        std::fs::write(&pgm, render_pgm(&field, cfg.clip))?;

        let mut t = table_for(cfg, "field", &["family", "center_x", "center_y", "n", "re", "im", "abs"]);
        t.meta("method", method.name())
            .meta("n_s", sol.sample_count)
            .meta("rank", sol.rank)
            .meta("residual_norm", num(sol.residual_norm))
            .meta("boundary_error", num(err))
            .meta("max_abs_field", num(field.max_abs()));
        if let Some(c) = sol.condition {
            t.meta("condition", num(c));
        }
        for (l, f) in sol.families.iter().enumerate() {
            let n_max = f.order as i64;
            for (idx, a) in sol.family_coefficients(l).iter().enumerate() {
                t.push(vec![
                    l.to_string(),
                    num(f.center.x),
                    num(f.center.y),
                    (idx as i64 - n_max).to_string(),
                    num(a.re),
                    num(a.im),
                    num(a.norm()),
                ]);
            }
        }
        let csv = out_dir.join(format!("coeffs_{stem}.csv"));
        t.write(&csv)?;
        written.push(pgm);
        written.push(csv);
    }
    Ok(written)
}
