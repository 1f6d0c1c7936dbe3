//! Discretised cadlag paths on uniform time grids.

use crate::error::{Error, Result};
use crate::levy::LevyModel;
use rand::Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Interpolation {
    /// Piecewise constant with left limits (cadlag-faithful default).
    PiecewiseConstant,
    PiecewiseLinear,
}

/// A sampled path: strictly increasing times starting at 0, values with
/// `values[0] = 0`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SamplePath {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    pub interpolation: Interpolation,
}

impl SamplePath {
    pub fn new(times: Vec<f64>, values: Vec<f64>, interpolation: Interpolation) -> Result<Self> {
        if times.len() != values.len() || times.len() < 2 {
            return Err(Error::parameter("path needs matching times/values, length >= 2"));
        }
        if times[0] != 0.0 || values[0] != 0.0 {
            return Err(Error::parameter("path must start at (0, 0)"));
        }
        if !times.windows(2).all(|w| w[1] > w[0]) {
            return Err(Error::parameter("times must be strictly increasing"));
        }
        Ok(SamplePath { times, values, interpolation })
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn horizon(&self) -> f64 {
        *self.times.last().unwrap()
    }

    /// Grid mesh (uniform grids only).
    pub fn mesh(&self) -> f64 {
        self.times[1] - self.times[0]
    }

    pub fn terminal_value(&self) -> f64 {
        *self.values.last().unwrap()
    }
}

/// Sample a path of `model` on the uniform grid with `n` points covering
/// `[0, horizon]` (so `n - 1` independent increments of mesh
/// `horizon / (n - 1)`).
pub fn sample_path(
    model: &LevyModel,
    horizon: f64,
    n: usize,
    rng: &mut impl Rng,
) -> Result<SamplePath> {
    model.validate()?;
    if n < 2 {
        return Err(Error::parameter("grid size must be at least 2"));
    }
    if !(horizon > 0.0) {
        return Err(Error::parameter("horizon must be positive"));
    }
    let mesh = horizon / (n - 1) as f64;
    let mut times = Vec::with_capacity(n);
    let mut values = Vec::with_capacity(n);
    times.push(0.0);
    values.push(0.0);
    let mut acc = 0.0;
    for k in 1..n {
        acc += model.sample_increment_unchecked(mesh, rng);
        times.push(k as f64 * mesh);
        values.push(acc);
    }
    SamplePath::new(times, values, Interpolation::PiecewiseConstant)
}
