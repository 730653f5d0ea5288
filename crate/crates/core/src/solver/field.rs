use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{IncidentField, ScatterSolution};
use crate::error::{Error, Result};
use crate::geometry::{Point, Scatterer};

/// Relative boundary error `sqrt(∫|u_i + ũ_s|² ds / ∫|u_i|² ds)`, by the
/// trapezoid rule on `m_eval` arclength-equispaced points per scatterer.
pub fn boundary_error(sol: &ScatterSolution, scatterers: &[Scatterer], incident: &IncidentField, m_eval: usize) -> Result<f64> {
    let m = sol.dimension();
    if m_eval < 8 * m {
        return Err(Error::Config(format!(
            "boundary error needs at least 8m = {} points per scatterer, got {m_eval}",
            8 * m
        )));
    }
    let mut num = 0.0;
    let mut den = 0.0;
    for s in scatterers {
        let w = s.perimeter() / m_eval as f64;
        let terms: Vec<(f64, f64)> = (0..m_eval)
            .into_par_iter()
            .map_init(
                || vec![Complex64::new(0.0, 0.0); m],
                |row, j| {
                    let t = s.parameter_at_arclength_fraction(j as f64 / m_eval as f64);
                    let p = s.boundary_point(t).position;
                    let ui = incident.eval(p);
                    let us = sol.scattered_field_with(p, row)?;
                    Ok(((ui + us).norm_sqr(), ui.norm_sqr()))
                },
            )
            .collect::<Result<_>>()?;
        for (a, b) in terms {
            num += w * a;
            den += w * b;
        }
    }
    Ok((num / den).sqrt())
}

/// Rectangular lattice `x_min + i·spacing`, `y_min + j·spacing`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x_min: f64,
    pub y_min: f64,
    pub spacing: f64,
    pub nx: usize,
    pub ny: usize,
}

impl GridSpec {
    pub fn point(&self, i: usize, j: usize) -> Point {
        Point::new(self.x_min + i as f64 * self.spacing, self.y_min + j as f64 * self.spacing)
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Field values on a lattice, row-major in `j` (the `y` index); `None` marks
/// points inside a scatterer.
#[derive(Clone, Debug)]
pub struct FieldGrid {
    pub spec: GridSpec,
    pub values: Vec<Option<Complex64>>,
}

impl FieldGrid {
    pub fn get(&self, i: usize, j: usize) -> Option<Complex64> {
        self.values[j * self.spec.nx + i]
    }

    pub fn masked_count(&self) -> usize {
        self.values.iter().filter(|v| v.is_none()).count()
    }

    /// Largest modulus over unmasked cells.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Scattered field, plus the incident wave if `include_incident`, on `grid`.
pub fn evaluate_field(sol: &ScatterSolution, grid: &GridSpec, scatterers: &[Scatterer], incident: &IncidentField, include_incident: bool) -> Result<FieldGrid> {
    if !(grid.spacing > 0.0 && grid.spacing.is_finite()) {
        return Err(Error::Config(format!("grid spacing must be positive, got {}", grid.spacing)));
    }
    let m = sol.dimension();
    let values = (0..grid.len())
        .into_par_iter()
        .map_init(
            || vec![Complex64::new(0.0, 0.0); m],
            |row, idx| {
                let p = grid.point(idx % grid.nx, idx / grid.nx);
                if scatterers.iter().any(|s| s.point_inside(p)) {
                    return Ok(None);
                }
                let mut u = sol.scattered_field_with(p, row)?;
                if include_incident {
                    u += incident.eval(p);
                }
                Ok(Some(u))
            },
        )
        .collect::<Result<_>>()?;
    Ok(FieldGrid { spec: *grid, values })
}
