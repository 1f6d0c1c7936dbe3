//! Monte Carlo audit of the truncated-moment tail bound
//!
//! ```text
//! E[(|X_t| ∧ K)^p] <= (gamma_bar(eps)^2 t^2 + sigma2_bar(eps) t)^{p/2}
//!                     + K^p nu_bar(eps) t
//! ```
//!
//! for `p` in `(0, 2]`, `eps` in `(0, 1]`. Violations beyond three standard
//! errors are flagged.

use crate::error::{Error, Result};
use crate::levy::measure::truncated_functionals;
use crate::levy::LevyModel;
use crate::rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AuditPoint {
    pub t: f64,
    pub cap: f64,
    pub eps: f64,
    pub p: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AuditRow {
    pub point: AuditPoint,
    pub estimate: f64,
    pub se: f64,
    pub bound: f64,
    pub violation: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AuditReport {
    pub rows: Vec<AuditRow>,
    pub violations: usize,
}

/// Run the audit on a parameter grid with `n_mc` draws per point.
pub fn appendix_bound_audit(
    model: &LevyModel,
    grid: &[AuditPoint],
    n_mc: usize,
    seed: u64,
) -> Result<AuditReport> {
    model.validate()?;
    let mut rows = Vec::with_capacity(grid.len());
    let mut violations = 0;
    for (i, &pt) in grid.iter().enumerate() {
        if !(pt.p > 0.0 && pt.p <= 2.0) {
            return Err(Error::domain("moment order p must lie in (0, 2]"));
        }
        if !(pt.eps > 0.0 && pt.eps <= 1.0) {
            return Err(Error::domain("truncation level eps must lie in (0, 1]"));
        }
        if !(pt.t > 0.0 && pt.cap > 0.0) {
            return Err(Error::domain("t and the cap K must be positive"));
        }
        let (gb, s2, nb) = truncated_functionals(model, pt.eps)?;
        let bound = (gb * gb * pt.t * pt.t + s2 * pt.t).powf(pt.p / 2.0)
            + pt.cap.powf(pt.p) * nb * pt.t;
        let mut rng = rng::stream(seed, i as u64);
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for _ in 0..n_mc {
            let x = model.sample_increment_unchecked(pt.t, &mut rng);
            let v = x.abs().min(pt.cap).powf(pt.p);
            sum += v;
            sum_sq += v * v;
        }
        let n = n_mc as f64;
        let estimate = sum / n;
        let var = (sum_sq / n - estimate * estimate).max(0.0) / (n - 1.0);
        let se = var.sqrt();
        let violation = estimate - 3.0 * se > bound;
        if violation {
            violations += 1;
        }
        rows.push(AuditRow { point: pt, estimate, se, bound, violation });
    }
    Ok(AuditReport { rows, violations })
}
