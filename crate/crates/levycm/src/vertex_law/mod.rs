//! The law of the vertex-time process over an exponential horizon.
//!
//! For a Levy process observed on `[0, E/lambda]` with `E` unit exponential,
//! the vertex-time process has independent increments, and
//!
//! ```text
//! -log E[exp(-w tau_u)] = Phi_u(w)
//!     = \int_0^inf (1 - e^{-w t}) e^{-lambda t} P(X_t <= u t) dt / t.
//! ```
//!
//! This module evaluates `Phi` (and the finite-slope window exponent `Psi`)
//! by dyadic-shell quadrature, exposes the mean jump measures of the two
//! regimes, and provides the exact gamma-time-change representation
//! available for the Cauchy process.

pub mod measure;

use crate::error::{Error, Result};
use crate::levy::cdf::{prob_fn, CdfRoute};
use crate::levy::LevyModel;
use crate::numeric::quad::{dyadic_shells_down, dyadic_shells_up};
use rand::Rng;
use rand_distr::Distribution;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::Arc;

/// Quadrature policy for the Laplace-exponent integrals.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuadraturePolicy {
    /// Stop descending when a shell is below this fraction of the total.
    pub rel_cut: f64,
    /// Maximum dyadic depth toward `t = 0`.
    pub max_depth: u32,
    /// Per-shell absolute Simpson tolerance.
    pub shell_tol: f64,
    /// Use the cached standardized CDF table where scaling permits.
    pub cached_cdf: bool,
}

impl Default for QuadraturePolicy {
    fn default() -> Self {
        QuadraturePolicy { rel_cut: 1e-12, max_depth: 170, shell_tol: 1e-12, cached_cdf: true }
    }
}

/// Evaluator of the Laplace exponent of the vertex-time process.
pub struct PhiEvaluator {
    pub model: LevyModel,
    pub lambda: f64,
    pub policy: QuadraturePolicy,
    prob: Arc<dyn Fn(f64, f64) -> f64 + Sync + Send>,
}

impl PhiEvaluator {
    pub fn new(model: LevyModel, lambda: f64) -> Result<Self> {
        Self::with_policy(model, lambda, QuadraturePolicy::default())
    }

    pub fn with_policy(model: LevyModel, lambda: f64, policy: QuadraturePolicy) -> Result<Self> {
        model.validate()?;
        if !(lambda > 0.0) {
            return Err(Error::parameter("exponential horizon rate must be positive"));
        }
        let route = if policy.cached_cdf { CdfRoute::Scaled } else { CdfRoute::Generic };
        let prob = prob_fn(&model, route);
        Ok(PhiEvaluator { model, lambda, policy, prob })
    }

    /// Shell integral of `(1 - e^{-w t}) e^{-lambda t} mu(t) / t` with
    /// `mu` valued in `[0, 1]`.
    fn laplace_integral(&self, w: f64, mu: &dyn Fn(f64) -> f64) -> Result<f64> {
        if w < 0.0 {
            return Err(Error::domain("Laplace argument must be nonnegative"));
        }
        if w == 0.0 {
            return Ok(0.0);
        }
        let lambda = self.lambda;
        let g = move |t: f64| (-(-w * t).exp_m1()) * (-lambda * t).exp() / t * mu(t);
        let down = dyadic_shells_down(
            &g,
            1.0,
            self.policy.rel_cut,
            self.policy.max_depth,
            self.policy.shell_tol,
        );
        if down.tail_suspect {
            return Err(Error::DivergenceSuspected(format!(
                "shell sums not settled after {} dyadic levels",
                self.policy.max_depth
            )));
        }
        let up = dyadic_shells_up(&g, 1.0, self.policy.rel_cut, 90, self.policy.shell_tol);
        Ok(down.value + up)
    }

    /// `Phi_u(w)`.
    pub fn phi(&self, u: f64, w: f64) -> Result<f64> {
        let prob = Arc::clone(&self.prob);
        self.laplace_integral(w, &move |t| prob(t, u * t))
    }

    /// `Phi_inf(w)`: the full-horizon exponent, evaluated by quadrature.
    pub fn phi_infinity(&self, w: f64) -> Result<f64> {
        self.laplace_integral(w, &|_t| 1.0)
    }

    /// Closed form of `Phi_inf` (Frullani integral): `log(1 + w/lambda)`.
    pub fn phi_infinity_closed(&self, w: f64) -> f64 {
        (w / self.lambda).ln_1p()
    }

    /// `Psi_u(w)` for the slope window `(s, s + u]`: the Laplace exponent of
    /// `tau_{s+u} - tau_s`, computed as one quadrature of the probability
    /// window to avoid cancellation.
    pub fn psi_fs(&self, s: f64, u: f64, w: f64) -> Result<f64> {
        if !(u > 0.0) {
            return Err(Error::domain("slope increment must be positive"));
        }
        let prob = Arc::clone(&self.prob);
        self.laplace_integral(w, &move |t| (prob(t, (s + u) * t) - prob(t, s * t)).max(0.0))
    }
}

/// Exact sampler of the vertex-time process of a Cauchy process: a gamma
/// subordinator with per-unit-time exponent `w -> log(1 + w/lambda)`, run
/// through the time change `u -> 1/2 + arctan(c u + mu)/pi`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VertexCauchy {
    pub lambda: f64,
    pub c: f64,
    pub mu: f64,
}

impl VertexCauchy {
    pub fn new(lambda: f64, c: f64, mu: f64) -> Result<Self> {
        if !(lambda > 0.0 && c > 0.0) {
            return Err(Error::parameter("lambda and c must be positive"));
        }
        Ok(VertexCauchy { lambda, c, mu })
    }

    /// Calibrate `(c, mu)` against the marginal distribution function of a
    /// Cauchy model: `P(X_1 <= u) = 1/2 + arctan(c u + mu)/pi`.
    pub fn for_model(model: &LevyModel, lambda: f64) -> Result<Self> {
        match model {
            LevyModel::Cauchy { scale, location } => {
                VertexCauchy::new(lambda, 1.0 / scale, -location / scale)
            }
            LevyModel::Stable(p) if p.alpha == 1.0 => {
                let loc = p.cauchy_location();
                VertexCauchy::new(lambda, 1.0 / p.scale, -loc / p.scale)
            }
            _ => Err(Error::Capability("exact vertex sampler exists for Cauchy only".into())),
        }
    }

    /// Time change `T(u) = P(X_1 <= u)`.
    pub fn time_change(&self, u: f64) -> f64 {
        0.5 + (self.c * u + self.mu).atan() / PI
    }

    fn gamma_increment(&self, shape: f64, rng: &mut impl Rng) -> f64 {
        if shape <= 0.0 {
            return 0.0;
        }
        rand_distr::Gamma::new(shape, 1.0 / self.lambda).unwrap().sample(rng)
    }

    /// One draw of `tau_u`.
    pub fn sample_tau(&self, u: f64, rng: &mut impl Rng) -> f64 {
        self.gamma_increment(self.time_change(u), rng)
    }

    /// Joint draw of `tau_u` along an ascending slope grid.
    pub fn sample_path(&self, u_grid: &[f64], rng: &mut impl Rng) -> Result<Vec<(f64, f64)>> {
        if !u_grid.windows(2).all(|w| w[1] > w[0]) {
            return Err(Error::parameter("slope grid must be strictly increasing"));
        }
        let mut out = Vec::with_capacity(u_grid.len());
        let mut prev_t = 0.0;
        let mut acc = 0.0;
        for &u in u_grid {
            let t = self.time_change(u);
            acc += self.gamma_increment(t - prev_t, rng);
            prev_t = t;
            out.push((u, acc));
        }
        Ok(out)
    }

    /// Joint draw of the increments `tau_{s+u} - tau_s` for ascending
    /// increments `u_grid` above base slope `s`.
    pub fn sample_increments_above(
        &self,
        s: f64,
        u_grid: &[f64],
        rng: &mut impl Rng,
    ) -> Result<Vec<(f64, f64)>> {
        if !u_grid.windows(2).all(|w| w[1] > w[0]) {
            return Err(Error::parameter("slope grid must be strictly increasing"));
        }
        let base = self.time_change(s);
        let mut out = Vec::with_capacity(u_grid.len());
        let mut prev_t = base;
        let mut acc = 0.0;
        for &u in u_grid {
            let t = self.time_change(s + u);
            acc += self.gamma_increment(t - prev_t, rng);
            prev_t = t;
            out.push((u, acc));
        }
        Ok(out)
    }
}

/// z-score comparison of an empirical Laplace exponent against a target.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct LaplaceMatch {
    pub estimate: f64,
    pub se: f64,
    pub z: f64,
}

/// Delta-method z-score of `-log mean(e^{-w Y})` against `target`.
pub fn laplace_match(samples: &[f64], target: f64, w: f64) -> LaplaceMatch {
    assert!(!samples.is_empty(), "laplace_match needs samples");
    let n = samples.len() as f64;
    let mut mean = 0.0;
    for &y in samples {
        mean += (-w * y).exp();
    }
    mean /= n;
    let mut var = 0.0;
    for &y in samples {
        let d = (-w * y).exp() - mean;
        var += d * d;
    }
    var /= n * (n - 1.0).max(1.0);
    if var < 1e-30 * mean * mean {
        var = 0.0; // constant samples up to rounding
    }
    let estimate = -mean.ln();
    let se = var.sqrt() / mean;
    let z = if se == 0.0 {
        if (estimate - target).abs() <= 1e-12 * (1.0 + target.abs()) {
            0.0
        } else {
            f64::INFINITY * (estimate - target).signum()
        }
    } else {
        (estimate - target) / se
    };
    LaplaceMatch { estimate, se, z }
}
