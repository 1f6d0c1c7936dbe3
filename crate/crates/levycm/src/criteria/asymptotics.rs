//! Numerical ratio checks of the asymptotic behaviour of the vertex-time
//! Laplace exponent along sequences, for processes in the domain of normal
//! attraction (`g(t) = scale * t^{1/alpha}`, `G(t) = t / g(t)`).
//!
//! Growth regime (`u_n G^{-1}(1/|s_n|) -> infinity`):
//!
//! - infinite-slope form: `Phi_{s_n}(u_n) ~ (1 - rho) log(u_n G^{-1}(1/|s_n|))`
//!   for `alpha > 1`, `s_n -> -infinity`;
//! - finite-slope form: `Psi_{s_n}(u_n) ~ rho log(u_n G^{-1}(1/s_n))` for
//!   `alpha < 1`, slope increments `s_n -> 0` above the natural drift.
//!
//! Decay regime (`u_n G^{-1}(1/|s_n|) -> 0`): the exponent is
//! `O([u_n G^{-1}]^{(alpha-1)/2} + |s_n|^{-2})` and the reported ratio must
//! stay bounded.

use crate::error::{Error, Result};
use crate::levy::LevyModel;
use crate::vertex_law::PhiEvaluator;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AsymptoticsRegime {
    /// `Phi` at large negative slopes (infinite-slope regime), growth side.
    IsGrowth,
    /// `Psi` at small slope windows above the natural drift, growth side.
    FsGrowth,
    /// `Phi` decay side: bounded-ratio check.
    IsBounded,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RatioRow {
    pub n: usize,
    pub u: f64,
    pub s: f64,
    pub exponent: f64,
    pub reference: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RatioTable {
    pub regime: AsymptoticsRegime,
    pub rows: Vec<RatioRow>,
    /// For growth regimes: largest `|ratio - 1|` over the last quarter of
    /// the table. For the bounded regime: the largest ratio observed.
    pub tail_deviation: f64,
    pub trend_to_one: bool,
}

/// `G^{-1}` for the normal-attraction normalising function.
fn g_inverse(alpha: f64, scale: f64, y: f64) -> f64 {
    (scale * y).powf(alpha / (alpha - 1.0))
}

/// Evaluate the ratio table along `(u_n, s_n)` pairs. For `IsGrowth` the
/// `s` entries are (large negative) slopes; for `FsGrowth` they are (small
/// positive) slope increments above the natural drift.
pub fn phi_asymptotics_check(
    model: &LevyModel,
    regime: AsymptoticsRegime,
    pairs: &[(f64, f64)],
    lambda: f64,
) -> Result<RatioTable> {
    let (alpha, scale, rho) = match model {
        LevyModel::Stable(p) => (p.alpha, p.scale, p.rho),
        _ => {
            return Err(Error::Precondition(
                "asymptotic ratio checks need a stable model in the attraction class".into(),
            ))
        }
    };
    match regime {
        AsymptoticsRegime::IsGrowth | AsymptoticsRegime::IsBounded => {
            if !(alpha > 1.0) {
                return Err(Error::Precondition(
                    "infinite-slope asymptotics need alpha > 1".into(),
                ));
            }
        }
        AsymptoticsRegime::FsGrowth => {
            if !(alpha < 1.0) {
                return Err(Error::Precondition(
                    "finite-slope asymptotics need alpha < 1".into(),
                ));
            }
        }
    }
    let drivers: Vec<f64> =
        pairs.iter().map(|&(u, s)| u * g_inverse(alpha, scale, 1.0 / s.abs())).collect();
    match regime {
        AsymptoticsRegime::IsGrowth | AsymptoticsRegime::FsGrowth => {
            let ok = drivers.windows(2).all(|w| w[1] > w[0])
                && *drivers.last().unwrap_or(&0.0) > 10.0 * drivers.first().unwrap_or(&1.0);
            if !ok {
                return Err(Error::Precondition(
                    "sequence does not drive u_n G^{-1}(1/|s_n|) to infinity".into(),
                ));
            }
        }
        AsymptoticsRegime::IsBounded => {
            let ok = drivers.windows(2).all(|w| w[1] < w[0]);
            if !ok {
                return Err(Error::Precondition(
                    "sequence does not drive u_n G^{-1}(1/|s_n|) to zero".into(),
                ));
            }
        }
    }
    let eval = PhiEvaluator::new(model.clone(), lambda)?;
    let gamma0 = model.natural_drift().unwrap_or(0.0);
    let mut rows = Vec::with_capacity(pairs.len());
    for (n, (&(u, s), &driver)) in pairs.iter().zip(&drivers).enumerate() {
        let (exponent, reference) = match regime {
            AsymptoticsRegime::IsGrowth => {
                let expn = eval.phi(s, u)?;
                (expn, (1.0 - rho) * driver.ln())
            }
            AsymptoticsRegime::FsGrowth => {
                let expn = eval.psi_fs(gamma0, s, u)?;
                (expn, rho * driver.ln())
            }
            AsymptoticsRegime::IsBounded => {
                let expn = eval.phi(s, u)?;
                (expn, driver.powf((alpha - 1.0) / 2.0) + 1.0 / (s * s))
            }
        };
        rows.push(RatioRow { n, u, s, exponent, reference, ratio: exponent / reference });
    }
    let tail = &rows[rows.len() - (rows.len() / 4).max(1)..];
    let (tail_deviation, trend_to_one) = match regime {
        AsymptoticsRegime::IsBounded => {
            let max_ratio = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
            (max_ratio, false)
        }
        _ => {
            let dev = tail.iter().map(|r| (r.ratio - 1.0).abs()).fold(0.0, f64::max);
            let first_dev = (rows[0].ratio - 1.0).abs();
            (dev, dev < first_dev || dev < 0.1)
        }
    };
    Ok(RatioTable { regime, rows, tail_deviation, trend_to_one })
}
