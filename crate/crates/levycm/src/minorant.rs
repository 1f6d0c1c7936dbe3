//! Convex minorant of a sampled path: lower hull faces, the right-derivative
//! step function, vertex times, the stick-breaking face sampler and
//! post-minimum extraction.

use crate::error::{Error, Result};
use crate::levy::LevyModel;
use crate::path::SamplePath;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Slopes closer than this are merged into one face.
pub const SLOPE_MERGE_TOL: f64 = 1e-12;

/// One linear face of the minorant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Face {
    pub start: f64,
    pub length: f64,
    pub slope: f64,
}

impl Face {
    pub fn end(&self) -> f64 {
        self.start + self.length
    }
}

/// Piecewise-linear convex function anchored at `C(0) = 0`, stored as faces
/// sorted by slope (equivalently, chronologically).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConvexMinorant {
    pub faces: Vec<Face>,
    pub horizon: f64,
}

impl ConvexMinorant {
    /// Assemble from `(length, slope)` pairs; sорts by slope, merges ties
    /// and recomputes starts.
    pub fn from_lengths_slopes(mut parts: Vec<(f64, f64)>, horizon: f64) -> Result<Self> {
        if parts.iter().any(|&(l, _)| !(l > 0.0)) {
            return Err(Error::parameter("face lengths must be positive"));
        }
        parts.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        let mut faces: Vec<Face> = Vec::with_capacity(parts.len());
        let mut cursor = 0.0;
        for (len, slope) in parts {
            match faces.last_mut() {
                Some(last) if (slope - last.slope).abs() <= SLOPE_MERGE_TOL => {
                    // merge: pooled length, length-weighted slope
                    let total = last.length + len;
                    last.slope = (last.slope * last.length + slope * len) / total;
                    last.length = total;
                    cursor += len;
                }
                _ => {
                    faces.push(Face { start: cursor, length: len, slope });
                    cursor += len;
                }
            }
        }
        Ok(ConvexMinorant { faces, horizon })
    }

    pub fn total_face_length(&self) -> f64 {
        self.faces.iter().map(|f| f.length).sum()
    }

    /// Value `C(t)` of the minorant.
    pub fn eval(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        for f in &self.faces {
            if t <= f.start {
                break;
            }
            let span = (t - f.start).min(f.length);
            acc += span * f.slope;
        }
        acc
    }

    /// Right derivative `C'_t` for `t` in `(0, horizon)`.
    pub fn right_derivative(&self, t: f64) -> Result<f64> {
        if !(t > 0.0 && t < self.horizon) {
            return Err(Error::domain("right_derivative requires 0 < t < horizon"));
        }
        let i = self.faces.partition_point(|f| f.start <= t);
        if i == 0 {
            return Ok(self.faces[0].slope);
        }
        Ok(self.faces[(i - 1).min(self.faces.len() - 1)].slope)
    }

    /// Vertex time `tau_s = inf{t : C'_t > s} ∧ horizon`.
    pub fn vertex_time(&self, s: f64) -> VertexTimeQuery {
        let mut tau = 0.0;
        let mut attained = None;
        for f in &self.faces {
            if f.slope > s {
                attained = Some(f.slope);
                break;
            }
            tau = f.end();
        }
        if attained.is_none() {
            tau = self.horizon;
        }
        VertexTimeQuery { tau: tau.min(self.horizon), attained_slope: attained }
    }

    /// Minimum of the minorant (value at the last nonpositive-slope face).
    pub fn minimum(&self) -> f64 {
        let t = self.vertex_time(0.0).tau;
        self.eval(t)
    }

    /// Faces with `slope <= s` and length at least `floor`.
    pub fn count_faces_below(&self, s: f64, floor: f64) -> usize {
        self.faces.iter().filter(|f| f.slope <= s && f.length >= floor).count()
    }

    /// CSV face table `start,length,slope`.
    pub fn write_csv<W: std::io::Write>(&self, w: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        wtr.write_record(["start", "length", "slope"]).map_err(csv_err)?;
        for f in &self.faces {
            wtr.write_record([fmt17(f.start), fmt17(f.length), fmt17(f.slope)])
                .map_err(csv_err)?;
        }
        wtr.flush()?;
        Ok(())
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Config(format!("csv: {e}"))
}

/// 17-significant-digit decimal formatting used in all CSV output.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VertexTimeQuery {
    pub tau: f64,
    /// Slope of the face active immediately after `tau` (None when `tau`
    /// hits the horizon).
    pub attained_slope: Option<f64>,
}

/// Greatest convex function below the sampled points (lower convex hull by
/// monotone chain; input times are already sorted).
pub fn convex_minorant(path: &SamplePath) -> Result<ConvexMinorant> {
    let n = path.len();
    if n < 2 {
        return Err(Error::parameter("path needs at least 2 points"));
    }
    if !path.times.windows(2).all(|w| w[1] > w[0]) {
        return Err(Error::parameter("time grid must be strictly increasing"));
    }
    let hull = lower_hull_indices(&path.times, &path.values);
    let mut parts = Vec::with_capacity(hull.len() - 1);
    for w in hull.windows(2) {
        let (i, j) = (w[0], w[1]);
        let len = path.times[j] - path.times[i];
        let slope = (path.values[j] - path.values[i]) / len;
        parts.push((len, slope));
    }
    ConvexMinorant::from_lengths_slopes(parts, path.horizon())
}

/// Monotone-chain lower hull; returns vertex indices.
pub fn lower_hull_indices(xs: &[f64], ys: &[f64]) -> Vec<usize> {
    let mut stack: Vec<usize> = Vec::with_capacity(16);
    for p in 0..xs.len() {
        while stack.len() >= 2 {
            let a = stack[stack.len() - 2];
            let b = stack[stack.len() - 1];
            // pop while (a, b, p) is not a strict left turn
            let cross =
                (xs[b] - xs[a]) * (ys[p] - ys[a]) - (ys[b] - ys[a]) * (xs[p] - xs[a]);
            if cross <= 0.0 {
                stack.pop();
            } else {
                break;
            }
        }
        stack.push(p);
    }
    stack
}

/// Horizon specification for samplers that support random horizons.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Horizon {
    Fixed { t: f64 },
    /// Exponential horizon with the given rate (mean `1/rate`).
    Exponential { rate: f64 },
}

impl Horizon {
    pub fn draw(&self, rng: &mut impl Rng) -> Result<f64> {
        match *self {
            Horizon::Fixed { t } => {
                if t > 0.0 {
                    Ok(t)
                } else {
                    Err(Error::parameter("horizon must be positive"))
                }
            }
            Horizon::Exponential { rate } => {
                if rate > 0.0 {
                    let u: f64 = rng.gen::<f64>().clamp(1e-300, 1.0 - 1e-16);
                    Ok(-(1.0 - u).ln() / rate)
                } else {
                    Err(Error::parameter("horizon rate must be positive"))
                }
            }
        }
    }
}

/// Stick-breaking sample of the minorant's face set.
#[derive(Debug, Clone)]
pub struct StickBreakingMinorant {
    pub minorant: ConvexMinorant,
    /// Horizon length left unbroken after `n_faces` sticks.
    pub residual: f64,
    /// Set when the residual exceeds `1e-9 * horizon`.
    pub residual_flagged: bool,
}

/// Sample the minorant of `model` over `horizon` by uniform stick breaking:
/// lengths break the horizon, heights are independent increments over each
/// stick, and faces are the sticks sorted by slope.
pub fn stick_breaking_minorant(
    model: &LevyModel,
    horizon: Horizon,
    n_faces: usize,
    rng: &mut impl Rng,
) -> Result<StickBreakingMinorant> {
    model.validate()?;
    if n_faces == 0 {
        return Err(Error::parameter("n_faces must be at least 1"));
    }
    let total = horizon.draw(rng)?;
    let mut remaining = total;
    let mut parts = Vec::with_capacity(n_faces);
    for _ in 0..n_faces {
        let u: f64 = rng.gen();
        let len = remaining * u;
        if len <= 0.0 {
            break;
        }
        let height = model.sample_increment_unchecked(len, rng);
        parts.push((len, height / len));
        remaining -= len;
    }
    let minorant = ConvexMinorant::from_lengths_slopes(parts, total)?;
    Ok(StickBreakingMinorant {
        minorant,
        residual: remaining,
        residual_flagged: remaining > 1e-9 * total,
    })
}

/// Grid minimum, its last attainment time, and the re-rooted path.
#[derive(Debug, Clone)]
pub struct PostMinimum {
    pub min_value: f64,
    pub argmin_time: f64,
    pub shifted_times: Vec<f64>,
    pub shifted_values: Vec<f64>,
}

impl PostMinimum {
    /// Shifted path as a `SamplePath` when it has at least two points.
    pub fn as_path(&self) -> Option<SamplePath> {
        if self.shifted_times.len() < 2 {
            return None;
        }
        SamplePath::new(
            self.shifted_times.clone(),
            self.shifted_values.clone(),
            crate::path::Interpolation::PiecewiseConstant,
        )
        .ok()
    }
}

/// Split a path at its minimum (last attainment).
pub fn post_minimum(path: &SamplePath) -> PostMinimum {
    let mut idx = 0;
    let mut min = f64::INFINITY;
    for (i, &v) in path.values.iter().enumerate() {
        if v <= min {
            min = v;
            idx = i;
        }
    }
    let t0 = path.times[idx];
    let shifted_times: Vec<f64> = path.times[idx..].iter().map(|&t| t - t0).collect();
    let shifted_values: Vec<f64> = path.values[idx..].iter().map(|&v| v - min).collect();
    PostMinimum { min_value: min, argmin_time: t0, shifted_times, shifted_values }
}
