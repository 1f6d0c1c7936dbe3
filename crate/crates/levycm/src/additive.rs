//! Fluctuation machinery for non-decreasing pure-jump additive processes:
//! right inverses of jump paths, the two series tests controlling the upper
//! functions of the inverse, dyadic integral conditions on the mean jump
//! measure (direct and inverse-function forms), and the adversarial
//! dyadic-atom example.

use crate::criteria::testfn::TestFunction;
use crate::verdict::{
    classify_terms, classify_trend_to_zero, SeriesReport, TrendVerdict, Verdict, VerdictPolicy,
};
use crate::vertex_law::measure::{Atom, MeanJumpMeasure};
use crate::Result;
use rand::Rng;
use rand_distr::Distribution;
use serde::{Deserialize, Serialize};

/// A realisation of a pure-jump non-decreasing additive process as a list of
/// `(index, size)` jumps, sorted by index.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JumpList {
    pub jumps: Vec<(f64, f64)>,
    /// Expected total size discarded below the sampling floor.
    pub truncated_mean: f64,
}

impl JumpList {
    pub fn new(mut jumps: Vec<(f64, f64)>, truncated_mean: f64) -> Self {
        jumps.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        JumpList { jumps, truncated_mean }
    }

    /// `Y_u`: total jump size at indexes `<= u`.
    pub fn y_at(&self, u: f64) -> f64 {
        self.jumps.iter().take_while(|j| j.0 <= u).map(|j| j.1).sum()
    }

    /// Total mass of the realisation.
    pub fn total(&self) -> f64 {
        self.jumps.iter().map(|j| j.1).sum()
    }

    /// Right inverse `L_t = inf{u : Y_u > t}`.
    ///
    /// Beyond the realised total mass the inverse is reported as infinity:
    /// a truncated sample cannot witness the crossing.
    pub fn right_inverse(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        for &(u, x) in &self.jumps {
            acc += x;
            if acc > t {
                return u;
            }
        }
        f64::INFINITY
    }

    /// `(index, running total)` pairs for plotting and statistics.
    pub fn cumulative(&self) -> Vec<(f64, f64)> {
        let mut acc = 0.0;
        self.jumps
            .iter()
            .map(|&(u, x)| {
                acc += x;
                (u, acc)
            })
            .collect()
    }
}

/// Right inverse of a jump path (free-function form).
pub fn right_inverse(y: &JumpList, t: f64) -> f64 {
    y.right_inverse(t)
}

/// Exact pathwise implications `L(a) > b => a >= Y(b) => L(a) >= b`.
pub fn y_vs_l_implications_hold(y: &JumpList, levels: &[f64], indexes: &[f64]) -> bool {
    for &a in levels {
        let l = y.right_inverse(a);
        for &b in indexes {
            let yb = y.y_at(b);
            if l > b && !(a >= yb) {
                return false;
            }
            if a >= yb && !(l >= b) {
                return false;
            }
        }
    }
    true
}

/// Abstract additive process defined by its mean jump measure.
pub struct AdditiveSpec {
    pub measure: MeanJumpMeasure,
}

impl AdditiveSpec {
    pub fn new(measure: MeanJumpMeasure) -> Self {
        AdditiveSpec { measure }
    }

    /// Bivariate Laplace exponent `Psi_t(u)`.
    pub fn psi(&self, t: f64, u: f64) -> Result<f64> {
        self.measure.psi(t, u)
    }
}

/// Report of the first series test: terms
/// `exp(theta_n t_n - Psi_{f(t_n)}(theta_n))` with `t_n = phi(theta_n)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UpperSeriesReport {
    pub series: SeriesReport,
    /// Largest observed `f(t_n) / f(t_{n+1})` (the interpolation gap).
    pub f_ratio_max: f64,
    /// True when `theta_n` increases and `t_n` decreases as required.
    pub sequences_ok: bool,
}

/// Series test behind the upper bound on `limsup L_t / f(t)`.
pub fn thm31a_series(
    psi: &dyn Fn(f64, f64) -> Result<f64>,
    f: &dyn Fn(f64) -> f64,
    phi: &dyn Fn(f64) -> f64,
    thetas: &[f64],
    policy: &VerdictPolicy,
) -> Result<UpperSeriesReport> {
    let ts: Vec<f64> = thetas.iter().map(|&th| phi(th)).collect();
    let sequences_ok =
        thetas.windows(2).all(|w| w[1] > w[0]) && ts.windows(2).all(|w| w[1] < w[0]);
    let mut terms = Vec::with_capacity(thetas.len());
    for (&theta, &t) in thetas.iter().zip(&ts) {
        let psi_val = psi(f(t), theta)?;
        terms.push((theta * t - psi_val).exp());
    }
    let mut f_ratio_max = 0.0f64;
    for w in ts.windows(2) {
        f_ratio_max = f_ratio_max.max(f(w[0]) / f(w[1]));
    }
    Ok(UpperSeriesReport {
        series: SeriesReport::from_terms(terms, policy),
        f_ratio_max,
        sequences_ok,
    })
}

/// Report of the paired series tests behind the lower bound
/// `limsup L_t / f(t) >= 1`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LowerSeriesReport {
    /// `sum [exp(-Psi_{f(t_n)}(theta_n)) - exp(-theta_n t_n)]`, wanted
    /// divergent.
    pub first: SeriesReport,
    /// `sum Psi_{f(t_{n+1})}(theta_n)`, wanted convergent.
    pub second: SeriesReport,
    /// Numerical check of `phi(u) u -> infinity`.
    pub theta_t_to_infinity: bool,
}

pub fn thm31b_series(
    psi: &dyn Fn(f64, f64) -> Result<f64>,
    f: &dyn Fn(f64) -> f64,
    phi: &dyn Fn(f64) -> f64,
    thetas: &[f64],
    policy: &VerdictPolicy,
) -> Result<LowerSeriesReport> {
    let ts: Vec<f64> = thetas.iter().map(|&th| phi(th)).collect();
    let products: Vec<f64> = thetas.iter().zip(&ts).map(|(&th, &t)| th * t).collect();
    let theta_t_to_infinity = products.windows(2).all(|w| w[1] >= w[0] * 0.99)
        && products.last().unwrap_or(&0.0) > &(products.first().unwrap_or(&0.0) + 2.0);
    let mut first = Vec::with_capacity(thetas.len());
    for (&theta, &t) in thetas.iter().zip(&ts) {
        let psi_val = psi(f(t), theta)?;
        first.push((-psi_val).exp() - (-theta * t).exp());
    }
    let mut second = Vec::with_capacity(thetas.len().saturating_sub(1));
    for i in 0..thetas.len().saturating_sub(1) {
        second.push(psi(f(ts[i + 1]), thetas[i])?);
    }
    Ok(LowerSeriesReport {
        first: SeriesReport::from_terms(first, policy),
        second: SeriesReport::from_terms(second, policy),
        theta_t_to_infinity,
    })
}

/// One dyadic-shell condition: shell contributions and verdict.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ShellCondition {
    pub shells: Vec<f64>,
    pub verdict: Verdict,
}

/// A sequence condition (`2^n`-weighted integrals required to vanish).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SequenceCondition {
    pub values: Vec<f64>,
    pub trend: TrendVerdict,
}

/// Verdicts for the direct conditions on `Pi` with boundary `h`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeasureConditionsReport {
    pub pi_large: ShellCondition,
    pub pi_var: ShellCondition,
    pub pi_mean: SequenceCondition,
    pub pi_mean_var: ShellCondition,
}

/// Verdicts for the inverse-function conditions (convex `h`).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InverseConditionsReport {
    pub pi_var_inv: ShellCondition,
    pub pi_mean_inv: SequenceCondition,
    pub pi_mean_var_inv: ShellCondition,
    /// Convexity of `h` verified on a grid; a warning flag otherwise.
    pub h_convex: bool,
}

fn shell_condition(
    depth: u32,
    policy: &VerdictPolicy,
    term: impl Fn(f64, f64) -> Result<f64>,
) -> Result<ShellCondition> {
    let mut shells = Vec::with_capacity(depth as usize);
    for k in 0..depth {
        let hi = 2f64.powi(-(k as i32));
        let lo = 0.5 * hi;
        shells.push(term(lo, hi)?);
    }
    let (verdict, _, _) = classify_terms(&shells, policy);
    Ok(ShellCondition { shells, verdict })
}

/// Evaluate the direct conditions for boundary `h` (increasing, `h(0)=0`,
/// `h(1)=1` after normalization).
pub fn thm32_conditions(
    measure: &MeanJumpMeasure,
    h: &TestFunction,
    depth: u32,
    policy: &VerdictPolicy,
) -> Result<MeasureConditionsReport> {
    // (Pi_large): mass of {(t, x): t in shell, x >= h(t)}; since h is
    // increasing, x >= h(t) <=> t <= h^{-1}(x).
    let pi_large = shell_condition(depth, policy, |lo, hi| {
        measure.kernel_integral_region(
            h.eval(lo),
            f64::INFINITY,
            &|x| {
                let cut = h.inverse(x).min(hi);
                if cut > lo {
                    Some((lo, cut))
                } else {
                    None
                }
            },
            &|_, _| 1.0,
        )
    })?;
    // (Pi_var): x^2 / h(t)^2 on {2h(t) > x}, sizes in (0, 1).
    let pi_var = shell_condition(depth, policy, |lo, hi| {
        measure.kernel_integral_region(
            0.0,
            1.0,
            &|x| {
                let cut = h.inverse(0.5 * x).max(lo);
                if hi > cut {
                    Some((cut, hi))
                } else {
                    None
                }
            },
            &|t, x| {
                let ht = h.eval(t);
                (x / ht) * (x / ht)
            },
        )
    })?;
    // (Pi_mean): 2^n * integral over {t <= h^{-1}(2^{-n}), x < 2^{-n},
    // 2h(t) > x}.
    let mut mean_vals = Vec::with_capacity(depth as usize);
    for n in 0..depth {
        let level = 2f64.powi(-(n as i32));
        let idx_cap = h.inverse(level);
        let v = measure.kernel_integral_region(
            0.0,
            level,
            &|x| {
                let cut = h.inverse(0.5 * x);
                if idx_cap > cut {
                    Some((cut, idx_cap))
                } else {
                    None
                }
            },
            &|_, x| x,
        )?;
        mean_vals.push(v / level);
    }
    let trend = classify_trend_to_zero(&mean_vals, 4, 0.5);
    // (Pi_mean_var): x / h(t) on {2h(t) > x}, region (0,1] x (0,1).
    let pi_mean_var = shell_condition(depth, policy, |lo, hi| {
        measure.kernel_integral_region(
            0.0,
            1.0,
            &|x| {
                let cut = h.inverse(0.5 * x).max(lo);
                if hi > cut {
                    Some((cut, hi))
                } else {
                    None
                }
            },
            &|t, x| x / h.eval(t),
        )
    })?;
    Ok(MeasureConditionsReport {
        pi_large,
        pi_var,
        pi_mean: SequenceCondition { values: mean_vals, trend },
        pi_mean_var,
    })
}

/// Evaluate the inverse-function conditions for a convex boundary `h`.
pub fn prop34_conditions(
    measure: &MeanJumpMeasure,
    h: &TestFunction,
    depth: u32,
    policy: &VerdictPolicy,
) -> Result<InverseConditionsReport> {
    let h_convex = convexity_check(h);
    // (Pi_var_inv): h^{-1}(x)^2 / t^2 on {2t >= h^{-1}(x)}, (0,1] x (0,1).
    let pi_var_inv = shell_condition(depth, policy, |lo, hi| {
        measure.kernel_integral_region(
            0.0,
            1.0,
            &|x| {
                let cut = (0.5 * h.inverse(x)).max(lo);
                if hi > cut {
                    Some((cut, hi))
                } else {
                    None
                }
            },
            &|t, x| {
                let hx = h.inverse(x);
                (hx / t) * (hx / t)
            },
        )
    })?;
    // (Pi_mean_inv): 2^n * integral of h^{-1}(x) over
    // {t <= 2^{-n}, x < h(2^{-n}), 2t >= h^{-1}(x)}.
    let mut mean_vals = Vec::with_capacity(depth as usize);
    for n in 0..depth {
        let level = 2f64.powi(-(n as i32));
        let v = measure.kernel_integral_region(
            0.0,
            h.eval(level),
            &|x| {
                let cut = 0.5 * h.inverse(x);
                if level > cut {
                    Some((cut, level))
                } else {
                    None
                }
            },
            &|_, x| h.inverse(x),
        )?;
        mean_vals.push(v / level);
    }
    let trend = classify_trend_to_zero(&mean_vals, 4, 0.5);
    // (Pi_mean_var_inv): h^{-1}(x) / t on {2t >= h^{-1}(x)}, (0,1] x (0,1).
    let pi_mean_var_inv = shell_condition(depth, policy, |lo, hi| {
        measure.kernel_integral_region(
            0.0,
            1.0,
            &|x| {
                let cut = (0.5 * h.inverse(x)).max(lo);
                if hi > cut {
                    Some((cut, hi))
                } else {
                    None
                }
            },
            &|t, x| h.inverse(x) / t,
        )
    })?;
    Ok(InverseConditionsReport {
        pi_var_inv,
        pi_mean_inv: SequenceCondition { values: mean_vals, trend },
        pi_mean_var_inv,
        h_convex,
    })
}

fn convexity_check(h: &TestFunction) -> bool {
    let sup = h.domain_sup();
    let mut ok = true;
    for k in 1..30 {
        let t = sup * 0.9 * 2f64.powi(-k);
        let a = h.eval(0.5 * t);
        let b = h.eval(t);
        let c = h.eval(1.5 * t.min(sup / 1.5));
        // midpoint convexity with slack
        if b > 0.5 * (a + c) * (1.0 + 1e-9) + 1e-15 {
            ok = false;
        }
    }
    ok
}

/// Mean jump measure of the adversarial dyadic-atom example:
/// atoms of mass `2^n / n` at `(index, size) = (2^{-n}, 2^{-n}/n)`.
pub fn breakequivalence_measure(n_lo: u32, n_hi: u32) -> MeanJumpMeasure {
    let atoms = (n_lo..=n_hi)
        .map(|n| {
            let nf = n as f64;
            Atom {
                index: 2f64.powi(-(n as i32)),
                size: 2f64.powi(-(n as i32)) / nf,
                mass: 2f64.powi(n as i32) / nf,
            }
        })
        .collect();
    MeanJumpMeasure::Discrete { atoms }
}

/// Result of the adversarial experiment.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BreakExperimentReport {
    pub runs: u32,
    pub successes: u32,
    pub frequency: f64,
}

/// Simulates the dyadic-atom process and reports how often some atom in the
/// range carries at least its mean number of points (equivalently, the jump
/// at `2^{-n}` reaches `1/n^2`).
pub fn breakequivalence_experiment(
    n_lo: u32,
    n_hi: u32,
    runs: u32,
    rng: &mut impl Rng,
) -> BreakExperimentReport {
    let mut successes = 0u32;
    for _ in 0..runs {
        let mut hit = false;
        for n in n_lo..=n_hi {
            let mean = 2f64.powi(n as i32) / n as f64;
            let count = rand_distr::Poisson::new(mean).unwrap().sample(rng);
            if count >= mean {
                hit = true;
                break;
            }
        }
        if hit {
            successes += 1;
        }
    }
    BreakExperimentReport {
        runs,
        successes,
        frequency: if runs == 0 { 0.0 } else { successes as f64 / runs as f64 },
    }
}
