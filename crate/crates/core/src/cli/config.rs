//! JSON experiment configuration.
//!
//! ```json
//! {
//!   "name": "ellipse_k10",
//!   "sweep": { "kind": "ellipse_eccentricity", "semi_major": 1.0, "values": [0.86] },
//!   "densities": ["uniform_arclength", "km_ellipse"],
//!   "wavenumber": 10.0,
//!   "orders": [5, 10, 15],
//!   "samples": { "rule": "practical" },
//!   "methods": ["collocation", "least_squares"]
//! }
//! ```
//!
//! Either `scatterers` or `sweep` describes the geometry. Every family is
//! centred on its scatterer with the order taken from `orders`.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::geometry::{DensityKind, Point, Scatterer, Shape};
use crate::solver::{GridSpec, SolveMethod, DEFAULT_TRUNCATION};
use crate::stability::{QUADRATURE_FACTOR, REFINEMENT_FACTOR};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScattererSpec {
    pub shape: Shape,
    #[serde(default)]
    pub center: Point,
}

/// A one-parameter family of single scatterers centred at the origin.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ShapeSweep {
    EllipseEccentricity { semi_major: f64, values: Vec<f64> },
    BoothOval { values: Vec<f64> },
    CircleRadius { values: Vec<f64> },
    SquareHalfSide { values: Vec<f64> },
}

/// How many boundary samples each least-squares solve uses.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case", deny_unknown_fields)]
pub enum SampleRule {
    /// Fixed per-scatterer counts, one solve per entry.
    Explicit { counts: Vec<usize> },
    /// `ceil(K)` per scatterer.
    #[default]
    Practical,
    /// Smallest `n` meeting `K <= κ(r) n / ln n`, capped at `n_max`.
    Theorem { r: f64, n_max: usize },
    /// `N_s = m` per scatterer.
    Collocation,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KQuadrature {
    #[default]
    Quantile,
    Random,
}

fn default_wavenumber() -> f64 {
    6.0
}

fn default_methods() -> Vec<SolveMethod> {
    vec![SolveMethod::LeastSquares]
}

fn default_true() -> bool {
    true
}

fn default_truncation() -> f64 {
    DEFAULT_TRUNCATION
}

fn default_quadrature_factor() -> usize {
    QUADRATURE_FACTOR
}

fn default_refinement() -> usize {
    REFINEMENT_FACTOR
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub scatterers: Vec<ScattererSpec>,
    #[serde(default)]
    pub sweep: Option<ShapeSweep>,
    pub densities: Vec<DensityKind>,
    #[serde(default = "default_wavenumber")]
    pub wavenumber: f64,
    #[serde(default)]
    pub incident_angle: f64,
    pub orders: Vec<usize>,
    #[serde(default)]
    pub samples: SampleRule,
    #[serde(default = "default_methods")]
    pub methods: Vec<SolveMethod>,
    #[serde(default)]
    pub grid: Option<GridSpec>,
    /// Upper end of the grey scale for field renders.
    #[serde(default)]
    pub clip: Option<f64>,
    #[serde(default = "default_true")]
    pub include_incident: bool,
    #[serde(default = "default_truncation")]
    pub truncation: f64,
    /// Quantile offset in `[0, 1)` for solve points.
    #[serde(default)]
    pub offset: f64,
    /// Boundary-error points per scatterer; at least `8m` are always used.
    #[serde(default)]
    pub error_points: Option<usize>,
    #[serde(default)]
    pub k_quadrature: KQuadrature,
    #[serde(default = "default_quadrature_factor")]
    pub quadrature_factor: usize,
    #[serde(default = "default_refinement")]
    pub refinement: usize,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub jobs: Option<usize>,
}

/// One geometry to run.
#[derive(Clone, Debug)]
pub struct Case {
    pub scatterers: Vec<Scatterer>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| {
            Error::Config(format!("line {} column {}: {e}", e.line(), e.column()))
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn name_or(&self, fallback: &str) -> String {
        self.name.clone().unwrap_or_else(|| fallback.to_string())
    }

    /// Hex SHA-256 of the canonical JSON form, ignoring `jobs` and `output_dir`.
    pub fn hash(&self) -> String {
        let mut c = self.clone();
        c.jobs = None;
        c.output_dir = None;
        let json = serde_json::to_string(&c).expect("config serializes");
        hex::encode(Sha256::digest(json.as_bytes()))
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.wavenumber > 0.0 && self.wavenumber.is_finite()) {
            return Err(Error::Config(format!("wavenumber: must be positive, got {}", self.wavenumber)));
        }
        if !self.incident_angle.is_finite() {
            return Err(Error::Config("incident_angle: must be finite".into()));
        }
        if self.densities.is_empty() {
            return Err(Error::Config("densities: list is empty".into()));
        }
        if self.orders.is_empty() {
            return Err(Error::Config("orders: list is empty".into()));
        }
        if self.methods.is_empty() {
            return Err(Error::Config("methods: list is empty".into()));
        }
        if !(0.0..1.0).contains(&self.offset) {
            return Err(Error::Config(format!("offset: must lie in [0, 1), got {}", self.offset)));
        }
        if !(0.0..1.0).contains(&self.truncation) {
            return Err(Error::Config(format!("truncation: must lie in [0, 1), got {}", self.truncation)));
        }
        if self.quadrature_factor < QUADRATURE_FACTOR {
            return Err(Error::Config(format!("quadrature_factor: must be at least {QUADRATURE_FACTOR}")));
        }
        if self.refinement < REFINEMENT_FACTOR {
            return Err(Error::Config(format!("refinement: must be at least {REFINEMENT_FACTOR}")));
        }
        if self.jobs == Some(0) {
            return Err(Error::Config("jobs: must be at least 1".into()));
        }
        if let Some(c) = self.clip {
            if !(c > 0.0 && c.is_finite()) {
                return Err(Error::Config(format!("clip: must be positive, got {c}")));
            }
        }
        if let Some(g) = &self.grid {
            if !(g.spacing > 0.0 && g.spacing.is_finite()) || g.nx == 0 || g.ny == 0 {
                return Err(Error::Config(format!("grid: needs positive spacing and sizes, got {g:?}")));
            }
        }
        match &self.samples {
            SampleRule::Explicit { counts } if counts.is_empty() || counts.contains(&0) => {
                return Err(Error::Config("samples.counts: must be a nonempty list of positive counts".into()));
            }
            SampleRule::Theorem { r, n_max } if r.is_nan() || *r <= 0.0 || *n_max < 3 => {
                return Err(Error::Config("samples: theorem rule needs r > 0 and n_max >= 3".into()));
            }
            _ => {}
        }
        for (i, case) in self.cases()?.iter().enumerate() {
            for s in &case.scatterers {
                for d in &self.densities {
                    if !d.supports(s.shape()) {
                        return Err(Error::Config(format!(
                            "densities: {d} is not defined on case {i} shape {:?}",
                            s.shape()
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The geometries to run, in sweep order.
    pub fn cases(&self) -> Result<Vec<Case>> {
        match (&self.sweep, self.scatterers.is_empty()) {
            (Some(_), false) => Err(Error::Config("scatterers and sweep are mutually exclusive".into())),
            (None, true) => Err(Error::Config("scatterers: list is empty and no sweep is given".into())),
            (None, false) => {
                let scatterers = self
                    .scatterers
                    .iter()
                    .enumerate()
                    .map(|(i, s)| {
                        Scatterer::new(s.shape.clone(), s.center)
                            .map_err(|e| Error::Config(format!("scatterers[{i}]: {e}")))
                    })
                    .collect::<Result<_>>()?;
                Ok(vec![Case { scatterers }])
            }
            (Some(sweep), true) => {
                let values = match sweep {
                    ShapeSweep::EllipseEccentricity { values, .. }
                    | ShapeSweep::BoothOval { values }
                    | ShapeSweep::CircleRadius { values }
                    | ShapeSweep::SquareHalfSide { values } => values,
                };
                if values.is_empty() {
                    return Err(Error::Config("sweep.values: list is empty".into()));
                }
                values
                    .iter()
                    .map(|&v| {
                        let s = match sweep {
                            ShapeSweep::EllipseEccentricity { semi_major, .. } => {
                                Scatterer::ellipse_with_eccentricity(*semi_major, v)
                            }
                            ShapeSweep::BoothOval { .. } => Scatterer::booth_oval(v),
                            ShapeSweep::CircleRadius { .. } => Scatterer::circle(v),
                            ShapeSweep::SquareHalfSide { .. } => Scatterer::square(v),
                        }
                        .map_err(|e| Error::Config(format!("sweep value {v}: {e}")))?;
                        Ok(Case { scatterers: vec![s] })
                    })
                    .collect()
            }
        }
    }
}

/// The natural scalar of a shape: eccentricity for ellipses, `a` for ovals,
/// the radius or half side otherwise.
pub fn shape_parameter(s: &Scatterer) -> f64 {
    match *s.shape() {
        Shape::Circle { radius } => radius,
        Shape::Ellipse { .. } => s.eccentricity().unwrap_or(0.0),
        Shape::Square { half_side } => half_side,
        Shape::BoothOval { a, .. } => a,
    }
}

pub fn shape_name(s: &Scatterer) -> &'static str {
    match s.shape() {
        Shape::Circle { .. } => "circle",
        Shape::Ellipse { .. } => "ellipse",
        Shape::Square { .. } => "square",
        Shape::BoothOval { .. } => "booth_oval",
    }
}
