//! Scatterer boundaries, sampling densities and the disk-to-boundary maps
//! behind the KM densities.

pub mod conformal;
mod density;
mod scatterer;

pub use conformal::{
    ellipse_map, sc_square_map, solve_ellipse_modulus, EllipseMap, EllipseModulus, SquareMap,
};
pub use density::{BoundaryDensity, BoundarySample, DensityKind, KM_DIFFERENCE_STEP};
pub use scatterer::{BoundaryPoint, Point, Scatterer, Shape};
