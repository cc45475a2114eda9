//! Numerical kernels: quadrature, scalar optimization, special functions.

pub mod optimize;
pub mod quad;
pub mod special;

pub use optimize::{bisect, golden_max, grid_golden_max, GridSpacing, Maximum};
pub use quad::{integrate, integrate_with_breaks, Quadrature};
