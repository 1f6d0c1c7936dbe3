//! Statistical test helpers used by the Monte Carlo experiments.

use crate::numeric::special::kolmogorov_sf;
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Two-sample Kolmogorov-Smirnov test.
#[derive(Debug, Clone, Copy)]
pub struct KsOutcome {
    pub statistic: f64,
    pub p_value: f64,
}

/// Two-sample KS statistic and asymptotic p-value.
pub fn ks_two_sample(xs: &[f64], ys: &[f64]) -> KsOutcome {
    assert!(xs.len() >= 8 && ys.len() >= 8, "need at least 8 samples per side");
    let mut xs = xs.to_vec();
    let mut ys = ys.to_vec();
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ys.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let (n, m) = (xs.len(), ys.len());
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0f64;
    while i < n && j < m {
        let x = xs[i];
        let y = ys[j];
        let v = x.min(y);
        while i < n && xs[i] <= v {
            i += 1;
        }
        while j < m && ys[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / n as f64 - j as f64 / m as f64).abs());
    }
    let ne = (n as f64 * m as f64) / (n as f64 + m as f64);
    let sq = ne.sqrt();
    let lambda = (sq + 0.12 + 0.11 / sq) * d;
    KsOutcome { statistic: d, p_value: kolmogorov_sf(lambda) }
}

/// Two-sample chi-squared test on integer-valued observations.
///
/// Bins are the distinct pooled values (small-count neighbours merged until
/// every bin has at least `min_expected` pooled observations).
pub fn chi2_two_sample_counts(xs: &[u64], ys: &[u64], min_expected: f64) -> f64 {
    let max = xs.iter().chain(ys.iter()).copied().max().unwrap_or(0) as usize;
    let mut hx = vec![0.0f64; max + 1];
    let mut hy = vec![0.0f64; max + 1];
    for &v in xs {
        hx[v as usize] += 1.0;
    }
    for &v in ys {
        hy[v as usize] += 1.0;
    }
    // Merge adjacent bins with tiny pooled counts.
    let mut bins: Vec<(f64, f64)> = Vec::new();
    let mut acc = (0.0, 0.0);
    for k in 0..=max {
        acc.0 += hx[k];
        acc.1 += hy[k];
        if acc.0 + acc.1 >= min_expected {
            bins.push(acc);
            acc = (0.0, 0.0);
        }
    }
    if acc.0 + acc.1 > 0.0 {
        if let Some(last) = bins.last_mut() {
            last.0 += acc.0;
            last.1 += acc.1;
        } else {
            bins.push(acc);
        }
    }
    if bins.len() < 2 {
        return 1.0;
    }
    let n1: f64 = bins.iter().map(|b| b.0).sum();
    let n2: f64 = bins.iter().map(|b| b.1).sum();
    let k1 = (n2 / n1).sqrt();
    let k2 = (n1 / n2).sqrt();
    let mut stat = 0.0;
    for &(o1, o2) in &bins {
        let denom = o1 + o2;
        if denom > 0.0 {
            let d = k1 * o1 - k2 * o2;
            stat += d * d / denom;
        }
    }
    let dof = (bins.len() - 1) as f64;
    let chi = ChiSquared::new(dof).unwrap();
    1.0 - chi.cdf(stat)
}

/// Median of a slice (copies; NaNs not allowed).
pub fn median(values: &[f64]) -> f64 {
    assert!(!values.is_empty());
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Empirical quantile with linear interpolation, `q` in `[0, 1]`.
pub fn quantile(values: &[f64], q: f64) -> f64 {
    assert!(!values.is_empty());
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let pos = q.clamp(0.0, 1.0) * (v.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    if lo == hi {
        v[lo]
    } else {
        v[lo] + (pos - lo as f64) * (v[hi] - v[lo])
    }
}
