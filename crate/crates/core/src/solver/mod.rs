//! Multipole trace matrices, collocation and truncated least-squares solves,
//! boundary errors and exterior fields.

mod basis;
mod circle;
mod field;
mod linalg;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{BoundaryDensity, Point, Scatterer};

pub use basis::{evaluate_families, total_dimension, IncidentField, MultipoleFamily};
pub use circle::analytic_circle_solution;
pub use field::{boundary_error, evaluate_field, FieldGrid, GridSpec};

/// Default relative SVD truncation.
pub const DEFAULT_TRUNCATION: f64 = 1e-12;

/// Trace matrix with entry `(p, (l, n)) = H_n(k r_l(p)) e^{in θ_l(p)}`.
pub fn assemble_matrix(families: &[MultipoleFamily], points: &[Point]) -> Result<DMatrix<Complex64>> {
    let m = total_dimension(families);
    let rows: Vec<Vec<Complex64>> = points
        .par_iter()
        .map(|&p| {
            let mut row = vec![Complex64::new(0.0, 0.0); m];
            evaluate_families(families, p, &mut row)?;
            Ok(row)
        })
        .collect::<Result<_>>()?;
    Ok(DMatrix::from_fn(points.len(), m, |i, j| rows[i][j]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveMethod {
    Collocation,
    LeastSquares,
}

impl SolveMethod {
    pub fn name(self) -> &'static str {
        match self {
            SolveMethod::Collocation => "collocation",
            SolveMethod::LeastSquares => "least_squares",
        }
    }
}

/// Fitted multipole coefficients and solver diagnostics.
#[derive(Clone, Debug)]
pub struct ScatterSolution {
    pub families: Vec<MultipoleFamily>,
    /// `α_{-N}..α_N` per family, concatenated.
    pub coefficients: Vec<Complex64>,
    pub method: SolveMethod,
    pub rank: usize,
    pub tolerance: f64,
    /// Discrete residual `‖u + H a‖₂` on the solve points.
    pub residual_norm: f64,
    /// 1-norm condition estimate of the scaled square system (collocation only).
    pub condition: Option<f64>,
    pub sample_count: usize,
}

impl ScatterSolution {
    /// Wraps externally supplied coefficients, e.g. the analytic circle ones.
    pub fn from_coefficients(families: Vec<MultipoleFamily>, coefficients: Vec<Complex64>) -> Result<Self> {
        let m = total_dimension(&families);
        if coefficients.len() != m {
            return Err(Error::Config(format!(
                "expected {m} coefficients, got {}",
                coefficients.len()
            )));
        }
        Ok(Self {
            families,
            coefficients,
            method: SolveMethod::LeastSquares,
            rank: m,
            tolerance: 0.0,
            residual_norm: 0.0,
            condition: None,
            sample_count: 0,
        })
    }

    pub fn dimension(&self) -> usize {
        self.coefficients.len()
    }

    /// Coefficients of family `l`.
    pub fn family_coefficients(&self, l: usize) -> &[Complex64] {
        let start: usize = self.families[..l].iter().map(MultipoleFamily::size).sum();
        &self.coefficients[start..start + self.families[l].size()]
    }

    /// Scattered field `ũ_s(p)`.
    pub fn scattered_field(&self, p: Point) -> Result<Complex64> {
        let mut row = vec![Complex64::new(0.0, 0.0); self.dimension()];
        self.scattered_field_with(p, &mut row)
    }

    pub(crate) fn scattered_field_with(&self, p: Point, row: &mut [Complex64]) -> Result<Complex64> {
        evaluate_families(&self.families, p, row)?;
        Ok(row.iter().zip(&self.coefficients).map(|(h, a)| h * a).sum())
    }
}

/// Scatterers with their sampling densities, the multipole families and the
/// incident wave.
#[derive(Clone, Debug)]
pub struct ScatteringProblem {
    boundaries: Vec<BoundaryDensity>,
    families: Vec<MultipoleFamily>,
    incident: IncidentField,
    owner: Vec<usize>,
}

impl ScatteringProblem {
    /// Every family centre must lie strictly inside exactly one scatterer and
    /// every scatterer must hold at least one centre.
    pub fn new(boundaries: Vec<BoundaryDensity>, families: Vec<MultipoleFamily>, incident: IncidentField) -> Result<Self> {
        if boundaries.is_empty() {
            return Err(Error::Config("at least one scatterer is required".into()));
        }
        if families.is_empty() {
            return Err(Error::Config("at least one multipole family is required".into()));
        }
        let mut owner = Vec::with_capacity(families.len());
        for (l, f) in families.iter().enumerate() {
            let inside: Vec<usize> = boundaries
                .iter()
                .enumerate()
                .filter(|(_, b)| b.scatterer().point_inside(f.center))
                .map(|(i, _)| i)
                .collect();
            match inside.as_slice() {
                [i] => owner.push(*i),
                [] => {
                    return Err(Error::Config(format!(
                        "family {l} centre {:?} is not inside any scatterer",
                        f.center
                    )))
                }
                _ => {
                    return Err(Error::Config(format!(
                        "family {l} centre {:?} lies inside several scatterers",
                        f.center
                    )))
                }
            }
        }
        for i in 0..boundaries.len() {
            if !owner.contains(&i) {
                return Err(Error::Config(format!("scatterer {i} has no multipole family")));
            }
        }
        Ok(Self {
            boundaries,
            families,
            incident,
            owner,
        })
    }

    /// Single family of order `order` at the centre of a single scatterer.
    pub fn single(boundary: BoundaryDensity, wavenumber: f64, order: usize, angle: f64) -> Result<Self> {
        let family = MultipoleFamily::new(boundary.scatterer().center(), wavenumber, order)?;
        Self::new(vec![boundary], vec![family], IncidentField::plane_wave(angle, wavenumber))
    }

    pub fn boundaries(&self) -> &[BoundaryDensity] {
        &self.boundaries
    }

    pub fn families(&self) -> &[MultipoleFamily] {
        &self.families
    }

    pub fn incident(&self) -> IncidentField {
        self.incident
    }

    pub fn scatterers(&self) -> Vec<Scatterer> {
        self.boundaries.iter().map(|b| b.scatterer().clone()).collect()
    }

    pub fn dimension(&self) -> usize {
        total_dimension(&self.families)
    }

    /// Families owned by scatterer `i`.
    pub fn families_of(&self, i: usize) -> Vec<MultipoleFamily> {
        self.families
            .iter()
            .zip(&self.owner)
            .filter(|(_, &o)| o == i)
            .map(|(f, _)| *f)
            .collect()
    }

    /// Per-scatterer sample counts making the system square.
    pub fn collocation_counts(&self) -> Vec<usize> {
        (0..self.boundaries.len())
            .map(|i| total_dimension(&self.families_of(i)))
            .collect()
    }

    /// Sample points `counts[i]` per scatterer at quantile offset `offset`.
    pub fn sample_points(&self, counts: &[usize], offset: f64) -> Result<Vec<Point>> {
        if counts.len() != self.boundaries.len() {
            return Err(Error::Config(format!(
                "expected {} sample counts, got {}",
                self.boundaries.len(),
                counts.len()
            )));
        }
        let mut points = Vec::with_capacity(counts.iter().sum());
        for (b, &n) in self.boundaries.iter().zip(counts) {
            points.extend(b.sample_points(n, offset)?.into_iter().map(|s| s.position));
        }
        Ok(points)
    }

    fn system(&self, points: &[Point]) -> Result<(DMatrix<Complex64>, DVector<Complex64>)> {
        let h = assemble_matrix(&self.families, points)?;
        let rhs = DVector::from_iterator(points.len(), points.iter().map(|&p| -self.incident.eval(p)));
        Ok((h, rhs))
    }

    fn residual(&self, h: &DMatrix<Complex64>, rhs: &DVector<Complex64>, x: &DVector<Complex64>) -> f64 {
        (h * x - rhs).norm()
    }
}

/// Square solve `H a = -u_i` with `N_s = m` points placed by each scatterer's
/// density.
pub fn solve_collocation(problem: &ScatteringProblem, offset: f64) -> Result<ScatterSolution> {
    let counts = problem.collocation_counts();
    let points = problem.sample_points(&counts, offset)?;
    let (h, rhs) = problem.system(&points)?;
    let sol = linalg::solve_square(h.clone(), &rhs)?;
    let residual_norm = problem.residual(&h, &rhs, &sol.x);
    Ok(ScatterSolution {
        families: problem.families.clone(),
        coefficients: sol.x.iter().copied().collect(),
        method: SolveMethod::Collocation,
        rank: problem.dimension(),
        tolerance: 0.0,
        residual_norm,
        condition: Some(sol.condition),
        sample_count: points.len(),
    })
}

/// Least-squares fit of `‖u + H a‖₂` with `counts[i]` points on scatterer `i`,
/// truncating singular values below `tau · σ_max`.
pub fn solve_least_squares(problem: &ScatteringProblem, counts: &[usize], offset: f64, tau: f64) -> Result<ScatterSolution> {
    let m = problem.dimension();
    let total: usize = counts.iter().sum();
    if total < m {
        return Err(Error::Config(format!(
            "least squares needs at least m = {m} samples, got {total}"
        )));
    }
    if !(0.0..1.0).contains(&tau) {
        return Err(Error::Config(format!("truncation must lie in [0, 1), got {tau}")));
    }
    let points = problem.sample_points(counts, offset)?;
    let (h, rhs) = problem.system(&points)?;
    let sol = linalg::solve_truncated(h.clone(), &rhs, tau)?;
    let residual_norm = problem.residual(&h, &rhs, &sol.x);
    Ok(ScatterSolution {
        families: problem.families.clone(),
        coefficients: sol.x.iter().copied().collect(),
        method: SolveMethod::LeastSquares,
        rank: sol.rank,
        tolerance: tau,
        residual_norm,
        condition: None,
        sample_count: points.len(),
    })
}
