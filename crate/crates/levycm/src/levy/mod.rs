//! Parametric Levy models with exact increment samplers.

pub mod cdf;
pub mod measure;
pub mod stable;

use crate::error::{Error, Result};
use rand::Rng;
use rand_distr::Distribution;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Jump law of the compound Poisson component.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum JumpLaw {
    /// `+1` or `-1` with equal probability.
    Rademacher,
    Point { value: f64 },
    Uniform { lo: f64, hi: f64 },
    Gaussian { mean: f64, sd: f64 },
}

impl JumpLaw {
    pub fn sample(&self, rng: &mut impl Rng) -> f64 {
        match *self {
            JumpLaw::Rademacher => {
                if rng.gen::<bool>() {
                    1.0
                } else {
                    -1.0
                }
            }
            JumpLaw::Point { value } => value,
            JumpLaw::Uniform { lo, hi } => rng.gen::<f64>() * (hi - lo) + lo,
            JumpLaw::Gaussian { mean, sd } => {
                let z: f64 = rand_distr::StandardNormal.sample(rng);
                mean + sd * z
            }
        }
    }

    /// `E[|J|^p 1{a < |J| <= b}]`-style moments used by the truncated
    /// functionals; exact per law.
    fn validate(&self) -> Result<()> {
        match *self {
            JumpLaw::Uniform { lo, hi } if !(hi > lo) => {
                Err(Error::parameter("uniform jump law needs hi > lo"))
            }
            JumpLaw::Gaussian { sd, .. } if !(sd > 0.0) => {
                Err(Error::parameter("gaussian jump law needs sd > 0"))
            }
            JumpLaw::Point { value } if value == 0.0 => {
                Err(Error::parameter("point jump law must not sit at 0"))
            }
            _ => Ok(()),
        }
    }
}

/// Strictly stable component in the `(alpha, rho, scale, drift)`
/// parametrization; internally converted to the skew parametrization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StableParams {
    pub alpha: f64,
    /// Positivity parameter `rho = lim_{t -> 0} P(X_t - drift t > 0)`.
    pub rho: f64,
    pub scale: f64,
    /// For `alpha < 1` this is the natural drift; for `alpha > 1` the mean.
    #[serde(default)]
    pub drift: f64,
}

impl StableParams {
    pub fn beta_skew(&self) -> Result<f64> {
        stable::rho_to_beta(self.alpha, self.rho)
    }

    fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha <= 2.0) {
            return Err(Error::parameter("stable alpha must lie in (0, 2]"));
        }
        if !(self.scale > 0.0) {
            return Err(Error::parameter("stable scale must be positive"));
        }
        if !(0.0..=1.0).contains(&self.rho) {
            return Err(Error::parameter("stable rho must lie in [0, 1]"));
        }
        if self.alpha != 1.0 {
            self.beta_skew()?;
        } else if !(self.rho > 0.0 && self.rho < 1.0) {
            return Err(Error::parameter("alpha = 1 needs rho in (0, 1)"));
        }
        Ok(())
    }

    /// Location per unit time for the `alpha = 1` representation
    /// (skew at `alpha = 1` is carried by a Cauchy location shift).
    pub fn cauchy_location(&self) -> f64 {
        self.scale * (PI * (self.rho - 0.5)).tan() + self.drift
    }
}

/// Compound Poisson with drift.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompoundPoissonParams {
    pub rate: f64,
    pub jumps: JumpLaw,
    #[serde(default)]
    pub drift: f64,
}

impl CompoundPoissonParams {
    fn validate(&self) -> Result<()> {
        if !(self.rate > 0.0) {
            return Err(Error::parameter("compound Poisson rate must be positive"));
        }
        self.jumps.validate()
    }
}

/// A parametric Levy process with exact increment sampling.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum LevyModel {
    Brownian { sigma: f64, #[serde(default)] drift: f64 },
    Stable(StableParams),
    Cauchy { scale: f64, #[serde(default)] location: f64 },
    GammaSub { shape: f64, rate: f64 },
    CompoundPoisson(CompoundPoissonParams),
    StablePlusPerturbation { base: StableParams, perturbation: CompoundPoissonParams },
}

impl LevyModel {
    pub fn brownian(sigma: f64, drift: f64) -> Self {
        LevyModel::Brownian { sigma, drift }
    }

    pub fn stable(alpha: f64, rho: f64, scale: f64, drift: f64) -> Self {
        LevyModel::Stable(StableParams { alpha, rho, scale, drift })
    }

    pub fn cauchy(scale: f64, location: f64) -> Self {
        LevyModel::Cauchy { scale, location }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            LevyModel::Brownian { sigma, .. } => {
                if !(*sigma > 0.0) {
                    return Err(Error::parameter("brownian sigma must be positive"));
                }
                Ok(())
            }
            LevyModel::Stable(p) => p.validate(),
            LevyModel::Cauchy { scale, .. } => {
                if !(*scale > 0.0) {
                    return Err(Error::parameter("cauchy scale must be positive"));
                }
                Ok(())
            }
            LevyModel::GammaSub { shape, rate } => {
                if !(*shape > 0.0 && *rate > 0.0) {
                    return Err(Error::parameter("gamma subordinator needs shape, rate > 0"));
                }
                Ok(())
            }
            LevyModel::CompoundPoisson(p) => p.validate(),
            LevyModel::StablePlusPerturbation { base, perturbation } => {
                base.validate()?;
                perturbation.validate()
            }
        }
    }

    /// One exact increment `X_t`. `t = 0` returns `0`.
    pub fn sample_increment(&self, t: f64, rng: &mut impl Rng) -> Result<f64> {
        self.validate()?;
        if t < 0.0 {
            return Err(Error::domain("increment duration must be nonnegative"));
        }
        if t == 0.0 {
            return Ok(0.0);
        }
        Ok(self.sample_increment_unchecked(t, rng))
    }

    /// Sampling path without re-validation, for hot loops.
    pub(crate) fn sample_increment_unchecked(&self, t: f64, rng: &mut impl Rng) -> f64 {
        match self {
            LevyModel::Brownian { sigma, drift } => {
                let z: f64 = rand_distr::StandardNormal.sample(rng);
                drift * t + sigma * t.sqrt() * z
            }
            LevyModel::Stable(p) => {
                if p.alpha == 1.0 {
                    let z = stable::sample_standard(1.0, 0.0, rng);
                    p.cauchy_location() * t + p.scale * t * z
                } else {
                    let beta = p.beta_skew().expect("validated");
                    let z = stable::sample_standard(p.alpha, beta, rng);
                    p.drift * t + p.scale * t.powf(1.0 / p.alpha) * z
                }
            }
            LevyModel::Cauchy { scale, location } => {
                let z = stable::sample_standard(1.0, 0.0, rng);
                location * t + scale * t * z
            }
            LevyModel::GammaSub { shape, rate } => {
                let g = rand_distr::Gamma::new(shape * t, 1.0 / rate).unwrap();
                g.sample(rng)
            }
            LevyModel::CompoundPoisson(p) => {
                let n = rand_distr::Poisson::new(p.rate * t).unwrap().sample(rng) as u64;
                let mut s = p.drift * t;
                for _ in 0..n {
                    s += p.jumps.sample(rng);
                }
                s
            }
            LevyModel::StablePlusPerturbation { base, perturbation } => {
                let a = LevyModel::Stable(base.clone()).sample_increment_unchecked(t, rng);
                let b = LevyModel::CompoundPoisson(perturbation.clone())
                    .sample_increment_unchecked(t, rng);
                a + b
            }
        }
    }

    /// Blumenthal-Getoor index. Convention: a Gaussian part dominates and
    /// gives 2 even though the jump measure is empty.
    pub fn bg_index(&self) -> f64 {
        match self {
            LevyModel::Brownian { .. } => 2.0,
            LevyModel::Stable(p) => p.alpha,
            LevyModel::Cauchy { .. } => 1.0,
            LevyModel::GammaSub { .. } => 0.0,
            LevyModel::CompoundPoisson(_) => 0.0,
            LevyModel::StablePlusPerturbation { base, .. } => base.alpha,
        }
    }

    /// Natural drift `gamma_0 = lim_{t -> 0} X_t / t` for finite-variation
    /// kinds; `None` when the model has infinite variation.
    pub fn natural_drift(&self) -> Option<f64> {
        match self {
            LevyModel::Stable(p) if p.alpha < 1.0 => Some(p.drift),
            LevyModel::GammaSub { .. } => Some(0.0),
            LevyModel::CompoundPoisson(p) => Some(p.drift),
            LevyModel::StablePlusPerturbation { base, perturbation } if base.alpha < 1.0 => {
                Some(base.drift + perturbation.drift)
            }
            _ => None,
        }
    }

    /// Mean of `X_1` when it exists.
    pub fn mean(&self) -> Option<f64> {
        match self {
            LevyModel::Brownian { drift, .. } => Some(*drift),
            LevyModel::Stable(p) if p.alpha > 1.0 => Some(p.drift),
            LevyModel::GammaSub { shape, rate } => Some(shape / rate),
            LevyModel::CompoundPoisson(p) => match p.jumps {
                JumpLaw::Rademacher => Some(p.drift),
                JumpLaw::Point { value } => Some(p.drift + p.rate * value),
                JumpLaw::Uniform { lo, hi } => Some(p.drift + p.rate * 0.5 * (lo + hi)),
                JumpLaw::Gaussian { mean, .. } => Some(p.drift + p.rate * mean),
            },
            _ => None,
        }
    }

    /// Positivity parameter for the stable kinds.
    pub fn positivity_rho(&self) -> Option<f64> {
        match self {
            LevyModel::Stable(p) => Some(p.rho),
            LevyModel::Cauchy { location, scale } => {
                Some(0.5 + (location / scale).atan() / PI)
            }
            LevyModel::Brownian { .. } => Some(0.5),
            _ => None,
        }
    }

    /// Whether the paths have infinite variation.
    pub fn is_infinite_variation(&self) -> bool {
        match self {
            LevyModel::Brownian { .. } => true,
            LevyModel::Stable(p) => p.alpha >= 1.0,
            LevyModel::Cauchy { .. } => true,
            LevyModel::GammaSub { .. } => false,
            LevyModel::CompoundPoisson(_) => false,
            LevyModel::StablePlusPerturbation { base, .. } => base.alpha >= 1.0,
        }
    }

    /// Stability index when the model is a (possibly perturbed) stable law.
    pub fn stable_alpha(&self) -> Option<f64> {
        match self {
            LevyModel::Stable(p) => Some(p.alpha),
            LevyModel::Cauchy { .. } => Some(1.0),
            LevyModel::StablePlusPerturbation { base, .. } => Some(base.alpha),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;
    use crate::stats::ks_two_sample;

    #[test]
    fn brownian_increment_mean_is_zero() {
        let m = LevyModel::brownian(1.0, 0.0);
        let mut rng = stream(1, 0);
        let n = 100_000;
        let mean: f64 =
            (0..n).map(|_| m.sample_increment(1.0, &mut rng).unwrap()).sum::<f64>() / n as f64;
        // 3 sigma / sqrt(n)
        assert!(mean.abs() < 3.0 / (n as f64).sqrt() * 3.0, "mean = {mean}");
    }

    #[test]
    fn stable_alpha_two_matches_gaussian_sampler() {
        let st = LevyModel::stable(2.0, 0.5, 1.0, 0.0);
        let br = LevyModel::brownian(2.0f64.sqrt(), 0.0);
        let mut rng = stream(2, 0);
        let xs: Vec<f64> =
            (0..20_000).map(|_| st.sample_increment(1.0, &mut rng).unwrap()).collect();
        let ys: Vec<f64> =
            (0..20_000).map(|_| br.sample_increment(1.0, &mut rng).unwrap()).collect();
        let out = ks_two_sample(&xs, &ys);
        assert!(out.p_value > 0.01, "p = {}", out.p_value);
    }

    #[test]
    fn stable_empirical_positivity_matches_rho() {
        let rho = 0.6;
        let m = LevyModel::stable(1.5, rho, 1.0, 0.0);
        let mut rng = stream(3, 0);
        let n = 100_000;
        let pos = (0..n)
            .filter(|_| m.sample_increment(1.0, &mut rng).unwrap() > 0.0)
            .count() as f64;
        let p_hat = pos / n as f64;
        let bound = 3.0 * (0.24f64 / n as f64).sqrt();
        assert!((p_hat - rho).abs() < bound, "p_hat = {p_hat}");
    }

    #[test]
    fn cauchy_is_median_zero() {
        let m = LevyModel::cauchy(1.0, 0.0);
        let mut rng = stream(4, 0);
        let n = 100_000;
        let below = (0..n)
            .filter(|_| m.sample_increment(2.0, &mut rng).unwrap() <= 0.0)
            .count() as f64;
        let p_hat = below / n as f64;
        assert!((p_hat - 0.5).abs() < 3.0 * 0.5 / (n as f64).sqrt());
    }

    #[test]
    fn increments_are_additive_in_law() {
        // X_{t+s} should match the sum of independent X_t + X_s pieces.
        let models = [
            LevyModel::brownian(1.0, 0.3),
            LevyModel::stable(1.5, 0.6, 1.0, 0.0),
            LevyModel::stable(0.7, 1.0, 1.0, 0.0),
            LevyModel::cauchy(1.0, 0.0),
            LevyModel::GammaSub { shape: 2.0, rate: 3.0 },
            LevyModel::CompoundPoisson(CompoundPoissonParams {
                rate: 4.0,
                jumps: JumpLaw::Rademacher,
                drift: 0.5,
            }),
        ];
        let (t, s) = (0.7, 0.4);
        for (i, m) in models.iter().enumerate() {
            let mut rng = stream(5, i as u64);
            let n = 10_000;
            // Discrete laws: snap to a common lattice so that fp rounding of
            // drift * t does not split atoms across the two samples.
            let snap = |v: f64| {
                if matches!(m, LevyModel::CompoundPoisson(_)) {
                    (v * 1e6).round() / 1e6
                } else {
                    v
                }
            };
            let xs: Vec<f64> =
                (0..n).map(|_| snap(m.sample_increment(t + s, &mut rng).unwrap())).collect();
            let ys: Vec<f64> = (0..n)
                .map(|_| {
                    snap(m.sample_increment(t, &mut rng).unwrap()
                        + m.sample_increment(s, &mut rng).unwrap())
                })
                .collect();
            let out = ks_two_sample(&xs, &ys);
            assert!(out.p_value > 0.001, "model {i}: p = {}", out.p_value);
        }
    }

    #[test]
    fn zero_duration_increment_is_zero() {
        let m = LevyModel::stable(1.5, 0.6, 1.0, 0.0);
        let mut rng = stream(6, 0);
        assert_eq!(m.sample_increment(0.0, &mut rng).unwrap(), 0.0);
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(LevyModel::stable(2.5, 0.5, 1.0, 0.0).validate().is_err());
        assert!(LevyModel::stable(1.5, 0.9, 1.0, 0.0).validate().is_err());
        assert!(LevyModel::stable(1.5, 0.6, -1.0, 0.0).validate().is_err());
        assert!(LevyModel::brownian(0.0, 0.0).validate().is_err());
    }

    #[test]
    fn bg_index_closed_forms() {
        assert_eq!(LevyModel::stable(1.2, 0.5, 1.0, 0.0).bg_index(), 1.2);
        assert_eq!(LevyModel::stable(0.7, 0.5, 1.0, 0.0).bg_index(), 0.7);
        assert_eq!(
            LevyModel::CompoundPoisson(CompoundPoissonParams {
                rate: 1.0,
                jumps: JumpLaw::Rademacher,
                drift: 0.0,
            })
            .bg_index(),
            0.0
        );
        assert_eq!(LevyModel::brownian(1.0, 0.0).bg_index(), 2.0);
    }

    #[test]
    fn model_serde_round_trip() {
        let m = LevyModel::StablePlusPerturbation {
            base: StableParams { alpha: 0.8, rho: 0.7, scale: 2.0, drift: 0.1 },
            perturbation: CompoundPoissonParams {
                rate: 3.0,
                jumps: JumpLaw::Uniform { lo: -1.0, hi: 2.0 },
                drift: -0.2,
            },
        };
        let s = serde_json::to_string(&m).unwrap();
        let back: LevyModel = serde_json::from_str(&s).unwrap();
        assert_eq!(m, back);
    }
}
