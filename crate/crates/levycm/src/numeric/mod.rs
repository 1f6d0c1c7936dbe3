//! Shared numerical kernels: adaptive quadrature, dyadic shell integration,
//! monotone interpolation and a few special functions.

pub mod pchip;
pub mod quad;
pub mod special;
