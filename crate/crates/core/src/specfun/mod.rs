//! Special functions: scaled modified spherical Bessel functions and
//! axisymmetric spherical harmonics.

mod bessel;
mod legendre;

pub use bessel::{
    bessel_adjacent, bessel_pair, bessel_pair_capped, bessel_table, cross_kernel, cross_kernel_capped, miller_start,
    wronskian_residual, wronskian_residual_capped, BesselEval, CrossKernels, DEFAULT_ORDER_CAP,
};
pub use legendre::{legendre_p, uniform_theta, y_n0, y_n0_norm, LegendreMode};
