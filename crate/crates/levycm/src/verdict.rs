//! Three-way convergence verdicts for improper integrals and series.
//!
//! The criteria in this crate are exact finiteness statements; a numerical
//! evaluator can only report what the dyadic shells (or series terms) did at
//! finite depth. The verdict protocol is shared by every condition
//! evaluator:
//!
//! - `Converging` when the last `K` contributions decay geometrically
//!   (ratio at most 0.9), or when a Raabe-style estimate of the polynomial
//!   decay index is safely above 1.
//! - `Diverging` when the ratios stay at or above 1, or when the Raabe
//!   index is at or below 1 (harmonic-type tails).
//! - `Indeterminate` otherwise.
//!
//! The Raabe layer exists because several of the paper-level dichotomies sit
//! on harmonic boundaries (`sum 1/k` versus `sum k^{-3/2}`), which a pure
//! ratio threshold cannot tell apart at any finite depth.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Converging,
    Diverging,
    Indeterminate,
}

/// Trend verdict for sequences that a criterion requires to tend to zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrendVerdict {
    ToZero,
    BoundedAway,
    Indeterminate,
}

/// Tuning knobs for the verdict rule.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerdictPolicy {
    /// Number of trailing contributions inspected.
    pub window: usize,
    /// Geometric rule: converging when all trailing ratios are at most this.
    pub conv_ratio: f64,
    /// Geometric rule: diverging when all trailing ratios are at least this.
    pub div_ratio: f64,
    /// Raabe layer: diverging when the decay-index estimate is at most this.
    pub raabe_div: f64,
    /// Raabe layer: converging when the decay-index estimate is at least this.
    pub raabe_conv: f64,
}

impl Default for VerdictPolicy {
    fn default() -> Self {
        VerdictPolicy {
            window: 8,
            conv_ratio: 0.9,
            div_ratio: 1.0,
            raabe_div: 1.05,
            raabe_conv: 1.3,
        }
    }
}

/// Partial sums of a positive series or of dyadic shell contributions,
/// together with the verdict and its diagnostics.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeriesReport {
    pub terms: Vec<f64>,
    pub partial_sums: Vec<f64>,
    pub verdict: Verdict,
    /// Mean trailing ratio `t_{k+1}/t_k`.
    pub tail_ratio: f64,
    /// Raabe decay-index estimate `k (1 - t_{k+1}/t_k)` over the window,
    /// `NaN` when the geometric rule already decided.
    pub raabe_index: f64,
}

impl SeriesReport {
    pub fn from_terms(terms: Vec<f64>, policy: &VerdictPolicy) -> Self {
        let mut partial_sums = Vec::with_capacity(terms.len());
        let mut acc = 0.0;
        for &t in &terms {
            acc += t;
            partial_sums.push(acc);
        }
        let (verdict, tail_ratio, raabe_index) = classify_terms(&terms, policy);
        SeriesReport { terms, partial_sums, verdict, tail_ratio, raabe_index }
    }
}

/// Verdict for a list of positive contributions indexed by dyadic depth.
pub fn classify_terms(terms: &[f64], policy: &VerdictPolicy) -> (Verdict, f64, f64) {
    let n = terms.len();
    if n < 3 {
        return (Verdict::Indeterminate, f64::NAN, f64::NAN);
    }
    // Trailing zeros mean the contribution underflowed: that tail converges.
    let last_nonzero = terms.iter().rposition(|&t| t != 0.0);
    let Some(last_nonzero) = last_nonzero else {
        return (Verdict::Converging, 0.0, f64::NAN);
    };
    if last_nonzero + 2 < n {
        return (Verdict::Converging, 0.0, f64::NAN);
    }
    let w = policy.window.min(n - 1);
    let mut ratios = Vec::with_capacity(w);
    let mut raabe = Vec::with_capacity(w);
    for k in (n - w)..n {
        let prev = terms[k - 1];
        let cur = terms[k];
        if prev <= 0.0 {
            continue;
        }
        let r = cur / prev;
        ratios.push(r);
        raabe.push((k - 1) as f64 * (1.0 - r));
    }
    if ratios.is_empty() {
        return (Verdict::Indeterminate, f64::NAN, f64::NAN);
    }
    let mean_ratio = ratios.iter().sum::<f64>() / ratios.len() as f64;
    if ratios.iter().all(|&r| r <= policy.conv_ratio) {
        return (Verdict::Converging, mean_ratio, f64::NAN);
    }
    if ratios.iter().all(|&r| r >= policy.div_ratio) {
        return (Verdict::Diverging, mean_ratio, f64::NAN);
    }
    let mean_raabe = raabe.iter().sum::<f64>() / raabe.len() as f64;
    if mean_raabe <= policy.raabe_div {
        (Verdict::Diverging, mean_ratio, mean_raabe)
    } else if mean_raabe >= policy.raabe_conv {
        (Verdict::Converging, mean_ratio, mean_raabe)
    } else {
        (Verdict::Indeterminate, mean_ratio, mean_raabe)
    }
}

/// Trend verdict for a positive sequence required to tend to zero.
///
/// Looks at the trailing window: a sustained drop by at least `drop_factor`
/// relative to the window start is `ToZero`; a sequence that keeps at least
/// `flat_factor` of its early level is `BoundedAway`.
pub fn classify_trend_to_zero(seq: &[f64], window: usize, drop_factor: f64) -> TrendVerdict {
    let n = seq.len();
    if n < 3 {
        return TrendVerdict::Indeterminate;
    }
    let w = window.min(n / 2).max(1);
    let head: f64 = seq[..w].iter().sum::<f64>() / w as f64;
    let tail: f64 = seq[n - w..].iter().sum::<f64>() / w as f64;
    if head <= 0.0 {
        return if tail <= 0.0 { TrendVerdict::ToZero } else { TrendVerdict::BoundedAway };
    }
    let ratio = tail / head;
    if ratio <= drop_factor {
        TrendVerdict::ToZero
    } else if ratio >= 0.75 {
        TrendVerdict::BoundedAway
    } else {
        TrendVerdict::Indeterminate
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn policy() -> VerdictPolicy {
        VerdictPolicy::default()
    }

    #[test]
    fn geometric_series_converges() {
        let terms: Vec<f64> = (0..40).map(|k| 0.5f64.powi(k)).collect();
        let (v, _, _) = classify_terms(&terms, &policy());
        assert_eq!(v, Verdict::Converging);
    }

    #[test]
    fn constant_terms_diverge() {
        let terms = vec![0.3; 40];
        let (v, _, _) = classify_terms(&terms, &policy());
        assert_eq!(v, Verdict::Diverging);
    }

    #[test]
    fn harmonic_tail_diverges_via_raabe() {
        let terms: Vec<f64> = (1..60).map(|k| 1.0 / k as f64).collect();
        let (v, _, raabe) = classify_terms(&terms, &policy());
        assert_eq!(v, Verdict::Diverging);
        assert!(raabe < 1.05);
    }

    #[test]
    fn power_three_halves_converges_via_raabe() {
        let terms: Vec<f64> = (1..60).map(|k| (k as f64).powf(-1.5)).collect();
        let (v, _, raabe) = classify_terms(&terms, &policy());
        assert_eq!(v, Verdict::Converging);
        assert!(raabe > 1.3);
    }

    #[test]
    fn boundary_power_is_indeterminate() {
        let terms: Vec<f64> = (1..60).map(|k| (k as f64).powf(-1.15)).collect();
        let (v, _, _) = classify_terms(&terms, &policy());
        assert_eq!(v, Verdict::Indeterminate);
    }

    #[test]
    fn underflowed_tail_converges() {
        let mut terms: Vec<f64> = (0..20).map(|k| 0.99f64.powi(k)).collect();
        terms.extend(std::iter::repeat(0.0).take(20));
        let (v, _, _) = classify_terms(&terms, &policy());
        assert_eq!(v, Verdict::Converging);
    }

    #[test]
    fn trend_to_zero_detects_decay_and_flat() {
        let dec: Vec<f64> = (0..20).map(|k| 0.5f64.powi(k)).collect();
        assert_eq!(classify_trend_to_zero(&dec, 4, 0.5), TrendVerdict::ToZero);
        let flat = vec![0.4; 20];
        assert_eq!(classify_trend_to_zero(&flat, 4, 0.5), TrendVerdict::BoundedAway);
    }
}
