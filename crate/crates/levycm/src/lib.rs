//! Simulation and verification toolkit for the derivative of the convex
//! minorant of a Levy path.
//!
//! The crate is organised around the objects that appear in the small-time
//! analysis of the minorant slope process:
//!
//! - [`levy`]: parametric Levy models with exact increment samplers,
//!   marginal distribution functions and truncated-triplet functionals.
//! - [`path`] / [`minorant`]: discretised cadlag paths, their lower convex
//!   hulls, vertex times and the stick-breaking face sampler.
//! - [`vertex_law`]: the law of the vertex-time process over an exponential
//!   horizon, its Laplace exponent by quadrature, mean jump measures and
//!   Poisson-random-measure simulation (with an exact Cauchy representation).
//! - [`additive`]: series tests and integral criteria for non-decreasing
//!   additive processes and their right inverses.
//! - [`criteria`]: Levy-specific integral criteria for the finite-slope and
//!   infinite-slope regimes, scaling test functions and tail-bound audits.
//! - [`mc_lab`]: Monte Carlo experiments estimating the running extrema of
//!   slope statistics over dyadic windows, with a trend classifier.
//! - [`lab`]: config-driven experiment runner behind the `levycm` binary.
//!
//! Every sampling routine takes an explicit RNG; seeding is always by a
//! 64-bit integer so that identical configs reproduce identical output.

pub mod additive;
pub mod criteria;
pub mod error;
pub mod lab;
pub mod levy;
pub mod mc_lab;
pub mod minorant;
pub mod numeric;
pub mod path;
pub mod rng;
pub mod stats;
pub mod verdict;
pub mod vertex_law;

pub use error::{Error, Result};
pub use levy::LevyModel;
pub use minorant::ConvexMinorant;
pub use path::SamplePath;
pub use verdict::Verdict;
