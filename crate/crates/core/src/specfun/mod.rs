//! Special functions: integer-order cylinder functions and elliptic integrals.
//!
//! Everything here is a pure function of its arguments.

mod bessel;
mod elliptic;

pub use bessel::{
    bessel_j, bessel_jy_orders, bessel_y, cylinder, hankel1, hankel1_orders, wronskian_jy,
    CylinderEval, HankelEval, MAX_ARGUMENT, MAX_ORDER,
};
pub use elliptic::{
    carlson_rf, elliptic_k, elliptic_k_from_complement, incomplete_first_kind,
    CARLSON_TOLERANCE,
};
