//! The stability functional `K(m) = max_x Σ_j |L_j(x)|²` of a trace space
//! under a boundary density, and the sample budgets derived from it.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{BoundaryDensity, Point};
use crate::solver::{evaluate_families, total_dimension, MultipoleFamily};

/// Singular values below this fraction of the largest are discarded when
/// orthonormalizing.
pub const DISCARD_RATIO: f64 = 1e-13;

/// Default `M_q / m`.
pub const QUADRATURE_FACTOR: usize = 20;

/// Default `M_e / M_q`.
pub const REFINEMENT_FACTOR: usize = 4;

/// A finite-dimensional space of boundary traces.
pub trait TraceBasis: Sync {
    fn dimension(&self) -> usize;

    /// Writes the `dimension()` basis values at `p` into `out`.
    fn evaluate(&self, p: Point, out: &mut [Complex64]) -> Result<()>;
}

impl TraceBasis for [MultipoleFamily] {
    fn dimension(&self) -> usize {
        total_dimension(self)
    }

    fn evaluate(&self, p: Point, out: &mut [Complex64]) -> Result<()> {
        evaluate_families(self, p, out)
    }
}

impl TraceBasis for Vec<MultipoleFamily> {
    fn dimension(&self) -> usize {
        total_dimension(self)
    }

    fn evaluate(&self, p: Point, out: &mut [Complex64]) -> Result<()> {
        evaluate_families(self, p, out)
    }
}

/// A basis followed by a fixed `m × m` recombination of its columns.
pub struct MixedBasis<'a, B: TraceBasis + ?Sized> {
    pub inner: &'a B,
    pub mix: DMatrix<Complex64>,
}

impl<B: TraceBasis + ?Sized> TraceBasis for MixedBasis<'_, B> {
    fn dimension(&self) -> usize {
        self.mix.ncols()
    }

    fn evaluate(&self, p: Point, out: &mut [Complex64]) -> Result<()> {
        let mut raw = vec![Complex64::new(0.0, 0.0); self.inner.dimension()];
        self.inner.evaluate(p, &mut raw)?;
        for (j, o) in out.iter_mut().enumerate() {
            *o = raw.iter().zip(self.mix.column(j).iter()).map(|(a, b)| a * b).sum();
        }
        Ok(())
    }
}

/// How the quadrature nodes for `∫ · dν` are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum QuadratureRule {
    /// Midpoints `(i + ½)/M_q` of the quantile function.
    Quantile,
    /// Seeded iid draws from `ν`.
    Random { seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KEstimate {
    pub m: usize,
    pub k_value: f64,
    pub quadrature_size: usize,
    pub evaluation_size: usize,
    pub discarded: usize,
    /// `σ_min / σ_max` over retained singular values.
    pub smallest_retained_ratio: f64,
    /// Set when some direction of the span was discarded.
    pub rank_deficient: bool,
}

/// `K(m)` with the default sizes `M_q = 20 m`, `M_e = 4 M_q`.
pub fn estimate_k(families: &[MultipoleFamily], density: &BoundaryDensity) -> Result<KEstimate> {
    let m = total_dimension(families);
    let m_q = QUADRATURE_FACTOR * m;
    estimate_k_sized(families, density, m_q, REFINEMENT_FACTOR * m_q)
}

/// `K(m)` with explicit quadrature and evaluation sizes.
pub fn estimate_k_sized(families: &[MultipoleFamily], density: &BoundaryDensity, m_q: usize, m_e: usize) -> Result<KEstimate> {
    estimate_k_with(families, density, m_q, m_e, QuadratureRule::Quantile)
}

/// `K(m)` for any trace basis.
///
/// The basis is sampled on `m_q` nodes, column-scaled and whitened through the
/// SVD of `B / √M_q`; the squared row norms of `b(x) W` are then maximized over
/// the `m_e` quantile midpoints together with the quadrature nodes.
pub fn estimate_k_with<B: TraceBasis + ?Sized>(
    basis: &B,
    density: &BoundaryDensity,
    m_q: usize,
    m_e: usize,
    rule: QuadratureRule,
) -> Result<KEstimate> {
    let m = basis.dimension();
    if m == 0 {
        return Err(Error::Config("trace basis is empty".into()));
    }
    if m_q < QUADRATURE_FACTOR * m {
        return Err(Error::Config(format!(
            "quadrature size {m_q} is below {QUADRATURE_FACTOR}m = {}",
            QUADRATURE_FACTOR * m
        )));
    }
    if m_e < REFINEMENT_FACTOR * m_q {
        return Err(Error::Config(format!(
            "evaluation size {m_e} is below {REFINEMENT_FACTOR}M_q = {}",
            REFINEMENT_FACTOR * m_q
        )));
    }
    let nodes: Vec<Point> = match rule {
        QuadratureRule::Quantile => density.sample_points(m_q, 0.0)?,
        QuadratureRule::Random { seed } => density.sample_points_random(m_q, seed)?,
    }
    .into_iter()
    .map(|s| s.position)
    .collect();
    let rows = evaluate_rows(basis, &nodes)?;

    let mut scales = vec![0.0_f64; m];
    for row in &rows {
        for (s, z) in scales.iter_mut().zip(row) {
            *s = s.max(z.norm());
        }
    }
    if scales.iter().any(|&s| !(s > 0.0 && s.is_finite())) {
        return Err(Error::Numerical("basis column vanishes or overflows on the quadrature grid".into()));
    }
    for s in &mut scales {
        *s = 1.0 / *s;
    }
    let norm = 1.0 / (m_q as f64).sqrt();
    let b = DMatrix::from_fn(m_q, m, |i, j| rows[i][j] * (scales[j] * norm));

    let qr = b.qr();
    let svd = qr.r().svd(false, true);
    let v_t = svd
        .v_t
        .as_ref()
        .ok_or_else(|| Error::Numerical("SVD did not return V".into()))?;
    let sigma: Vec<f64> = svd.singular_values.iter().copied().collect();
    let smax = sigma.iter().copied().fold(0.0, f64::max);
    if !(smax > 0.0 && smax.is_finite()) {
        return Err(Error::Numerical("degenerate basis matrix".into()));
    }
    let keep: Vec<usize> = (0..sigma.len()).filter(|&j| sigma[j] >= DISCARD_RATIO * smax).collect();
    let smin = keep.iter().map(|&j| sigma[j]).fold(f64::INFINITY, f64::min);
    // W = diag(scales) V Σ^{-1}, restricted to retained directions.
    let w = DMatrix::from_fn(m, keep.len(), |i, c| {
        let j = keep[c];
        v_t[(j, i)].conj() * (scales[i] / sigma[j])
    });

    let eval_points: Vec<Point> = density
        .sample_points(m_e, 0.0)?
        .into_iter()
        .map(|s| s.position)
        .chain(nodes.iter().copied())
        .collect();
    let values: Vec<f64> = eval_points
        .par_iter()
        .map_init(
            || vec![Complex64::new(0.0, 0.0); m],
            |row, &p| {
                basis.evaluate(p, row)?;
                let mut total = 0.0;
                for c in 0..w.ncols() {
                    let l: Complex64 = row.iter().zip(w.column(c).iter()).map(|(a, b)| a * b).sum();
                    total += l.norm_sqr();
                }
                Ok(total)
            },
        )
        .collect::<Result<_>>()?;
    let k_value = values.iter().copied().fold(0.0, f64::max);
    if !k_value.is_finite() {
        return Err(Error::Numerical("K evaluation produced a non-finite value".into()));
    }
    let discarded = m - keep.len();
    Ok(KEstimate {
        m,
        k_value,
        quadrature_size: m_q,
        evaluation_size: m_e,
        discarded,
        smallest_retained_ratio: smin / smax,
        rank_deficient: discarded > 0,
    })
}

fn evaluate_rows<B: TraceBasis + ?Sized>(basis: &B, points: &[Point]) -> Result<Vec<Vec<Complex64>>> {
    let m = basis.dimension();
    points
        .par_iter()
        .map(|&p| {
            let mut row = vec![Complex64::new(0.0, 0.0); m];
            basis.evaluate(p, &mut row)?;
            Ok(row)
        })
        .collect()
}

/// `κ = (1 - ln 2) / (2 + 2r)`.
pub fn kappa(r: f64) -> f64 {
    (1.0 - std::f64::consts::LN_2) / (2.0 + 2.0 * r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleBudget {
    pub n: usize,
    /// No `n <= n_max` met the bound; `n` is then `n_max`.
    pub saturated: bool,
}

/// Smallest `n` in `3..=n_max` with `K <= κ(r) n / ln n`.
pub fn sample_budget(k: f64, n_max: usize, r: f64) -> Result<SampleBudget> {
    if !(k >= 1.0 && k.is_finite()) {
        return Err(Error::Domain(format!("K must be at least 1, got {k}")));
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Domain(format!("r must be positive, got {r}")));
    }
    if n_max < 3 {
        return Err(Error::Domain(format!("n_max must be at least 3, got {n_max}")));
    }
    let kap = kappa(r);
    let ok = |n: usize| k <= kap * n as f64 / (n as f64).ln();
    if !ok(n_max) {
        return Ok(SampleBudget { n: n_max, saturated: true });
    }
    // n / ln n is increasing for n >= 3.
    let (mut lo, mut hi) = (3usize, n_max);
    if ok(lo) {
        return Ok(SampleBudget { n: lo, saturated: false });
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(SampleBudget { n: hi, saturated: false })
}

/// Absolute slack below which `K` is rounded down before taking the ceiling,
/// so that a quadrature-exact `K = m` yields `m`.
pub const PRACTICAL_SLACK: f64 = 1e-6;

/// `ceil(K)`, the empirical sample count.
pub fn practical_budget(k: f64) -> Result<usize> {
    if !(k >= 1.0 - PRACTICAL_SLACK && k.is_finite()) {
        return Err(Error::Domain(format!("K must be at least 1, got {k}")));
    }
    Ok(((k - PRACTICAL_SLACK).ceil() as usize).max(1))
}
