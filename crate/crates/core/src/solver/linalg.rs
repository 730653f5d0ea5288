use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Divides every column by its largest modulus. Returns the scale factors
/// `s_j` such that `scaled = h · diag(s)`.
pub(crate) fn scale_columns(h: &mut DMatrix<Complex64>) -> Vec<f64> {
    let mut scales = Vec::with_capacity(h.ncols());
    for mut col in h.column_iter_mut() {
        let max = col.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let s = if max > 0.0 { 1.0 / max } else { 1.0 };
        col *= Complex64::new(s, 0.0);
        scales.push(s);
    }
    scales
}

fn norm1(a: &DMatrix<Complex64>) -> f64 {
    a.column_iter()
        .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub(crate) struct SquareSolve {
    pub x: DVector<Complex64>,
    pub condition: f64,
}

/// LU with partial pivoting on a column-scaled square system.
pub(crate) fn solve_square(mut h: DMatrix<Complex64>, rhs: &DVector<Complex64>) -> Result<SquareSolve> {
    let scales = scale_columns(&mut h);
    let anorm = norm1(&h);
    let lu = h.lu();
    let inv = lu
        .try_inverse()
        .ok_or(Error::Singular { condition: f64::INFINITY })?;
    let condition = anorm * norm1(&inv);
    if !condition.is_finite() || condition * f64::EPSILON >= 1.0 {
        return Err(Error::Singular { condition });
    }
    let mut x = lu
        .solve(rhs)
        .ok_or(Error::Singular { condition })?;
    for (xi, s) in x.iter_mut().zip(&scales) {
        *xi *= *s;
    }
    Ok(SquareSolve { x, condition })
}

pub(crate) struct LeastSquaresSolve {
    pub x: DVector<Complex64>,
    pub rank: usize,
}

/// Truncated least squares: column scaling, QR, then SVD of the triangular
/// factor. Singular values below `tau · σ_max` are dropped.
pub(crate) fn solve_truncated(
    mut h: DMatrix<Complex64>,
    rhs: &DVector<Complex64>,
    tau: f64,
) -> Result<LeastSquaresSolve> {
    let scales = scale_columns(&mut h);
    let qr = h.qr();
    let c = qr.q().adjoint() * rhs;
    let svd = qr.r().svd(true, true);
    let u = svd.u.as_ref().ok_or_else(|| Error::Numerical("SVD did not return U".into()))?;
    let v_t = svd
        .v_t
        .as_ref()
        .ok_or_else(|| Error::Numerical("SVD did not return V".into()))?;
    let sigma: Vec<f64> = svd.singular_values.iter().copied().collect();
    if sigma.iter().any(|s| !s.is_finite()) {
        return Err(Error::Numerical("non-finite singular value".into()));
    }
    let smax = sigma.iter().copied().fold(0.0, f64::max);
    let cut = tau * smax;
    let mut y = u.adjoint() * c;
    let mut rank = 0;
    for (yi, &s) in y.iter_mut().zip(&sigma) {
        if s > cut && s > 0.0 {
            *yi /= s;
            rank += 1;
        } else {
            *yi = Complex64::new(0.0, 0.0);
        }
    }
    let mut x = v_t.adjoint() * y;
    for (xi, s) in x.iter_mut().zip(&scales) {
        *xi *= *s;
    }
    Ok(LeastSquaresSolve { x, rank })
}
