//! Special functions, quadrature, the order-zero Hankel transform, grid
//! moments and bracketing root finding.
//!
//! Everything here is self-contained so it can double as the independent
//! reference for the closed forms used by the physics modules.

mod grid;
mod quadrature;
mod special;

pub use grid::{grid_moments, Axis, Grid2D, Moments};
pub use quadrature::{
    adaptive_simpson, find_root, hankel0, hankel0_complex, hankel0_with, HankelOptions, RadialGrid,
};
pub use special::{bessel_j0, bessel_j0_tail, cosine_integral, sici, sinc, sine_integral, EULER_GAMMA};
