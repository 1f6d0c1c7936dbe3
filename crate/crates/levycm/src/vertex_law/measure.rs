//! Mean jump measures of the vertex-time additive processes.
//!
//! All measures live on `(index, size)` with positive jump sizes. For the
//! slope-indexed families the size variable is physical time and the density
//! in size carries the exponential-horizon weight `e^{-lambda t} / t`:
//!
//! - `VertexSlope`: index is the absolute slope `v`, conditional index law
//!   `P(X_t <= v t)`.
//! - `FsSlope`: index is the slope increment `u > 0` above a base slope `s`,
//!   conditional law `P(s t < X_t <= (s + u) t)`.
//! - `IsInverseSlope`: index is `sigma = -1/v > 0` for negative slopes,
//!   conditional law `P(X_t <= -t/sigma)`.
//!
//! `Discrete` and `StationaryAtoms` support the synthetic examples.

use crate::additive::JumpList;
use crate::error::{Error, Result};
use crate::levy::cdf::{prob_fn, CdfRoute};
use crate::levy::LevyModel;
use crate::numeric::pchip::MonotoneCubic;
use crate::numeric::quad::{adaptive_simpson, dyadic_shells_down, stieltjes};
use rand::Rng;
use rand_distr::Distribution;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub index: f64,
    pub size: f64,
    pub mass: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SizeAtom {
    pub size: f64,
    pub rate: f64,
}

/// Mean jump measure `Pi(d index, d size)` of a non-decreasing additive
/// process, with rectangle-mass, kernel-integral and sampling access.
#[derive(Clone)]
pub enum MeanJumpMeasure {
    VertexSlope { model: LevyModel, lambda: f64 },
    FsSlope { model: LevyModel, lambda: f64, s: f64 },
    IsInverseSlope { model: LevyModel, lambda: f64 },
    Discrete { atoms: Vec<Atom> },
    /// `Pi(d index, d size) = d index ⊗ sum_i rate_i delta_{size_i}`.
    StationaryAtoms { sizes: Vec<SizeAtom> },
}

/// Half-open index interval `(lo, hi]`; `lo = -inf` is allowed.
#[derive(Debug, Clone, Copy)]
pub struct IndexRange {
    pub lo: f64,
    pub hi: f64,
}

impl IndexRange {
    pub fn new(lo: f64, hi: f64) -> Self {
        IndexRange { lo, hi }
    }

    pub fn up_to(hi: f64) -> Self {
        IndexRange { lo: f64::NEG_INFINITY, hi }
    }

    fn is_empty(&self) -> bool {
        !(self.hi > self.lo)
    }
}

const SIZE_REL_CUT: f64 = 1e-12;
const SIZE_MAX_DEPTH: u32 = 170;

impl MeanJumpMeasure {
    pub fn fs(model: LevyModel, lambda: f64, s: f64) -> Self {
        MeanJumpMeasure::FsSlope { model, lambda, s }
    }

    pub fn is_regime(model: LevyModel, lambda: f64) -> Self {
        MeanJumpMeasure::IsInverseSlope { model, lambda }
    }

    pub fn vertex(model: LevyModel, lambda: f64) -> Self {
        MeanJumpMeasure::VertexSlope { model, lambda }
    }

    fn lambda(&self) -> f64 {
        match self {
            MeanJumpMeasure::VertexSlope { lambda, .. }
            | MeanJumpMeasure::FsSlope { lambda, .. }
            | MeanJumpMeasure::IsInverseSlope { lambda, .. } => *lambda,
            _ => 0.0,
        }
    }

    /// Conditional index mass `mu_t((lo, hi])` for the continuous variants.
    fn index_window(&self, prob: &dyn Fn(f64, f64) -> f64, t: f64, r: IndexRange) -> f64 {
        match self {
            MeanJumpMeasure::VertexSlope { .. } => {
                let hi = prob(t, r.hi * t);
                let lo = if r.lo.is_finite() { prob(t, r.lo * t) } else { 0.0 };
                (hi - lo).max(0.0)
            }
            MeanJumpMeasure::FsSlope { s, .. } => {
                let lo = r.lo.max(0.0);
                if r.hi <= lo {
                    return 0.0;
                }
                let hi = prob(t, (s + r.hi) * t);
                let base = prob(t, (s + lo) * t);
                (hi - base).max(0.0)
            }
            MeanJumpMeasure::IsInverseSlope { .. } => {
                let lo = r.lo.max(0.0);
                if r.hi <= lo {
                    return 0.0;
                }
                let hi = prob(t, -t / r.hi);
                let base = if lo > 0.0 { prob(t, -t / lo) } else { 0.0 };
                (hi - base).max(0.0)
            }
            _ => unreachable!("continuous variants only"),
        }
    }

    /// Conditional index CDF value used for inversion sampling.
    fn index_cdf_at(&self, prob: &dyn Fn(f64, f64) -> f64, t: f64, v: f64) -> f64 {
        match self {
            MeanJumpMeasure::VertexSlope { .. } => prob(t, v * t),
            MeanJumpMeasure::FsSlope { s, .. } => {
                if v <= 0.0 {
                    0.0
                } else {
                    (prob(t, (s + v) * t) - prob(t, *s * t)).max(0.0)
                }
            }
            MeanJumpMeasure::IsInverseSlope { .. } => {
                if v <= 0.0 {
                    0.0
                } else {
                    prob(t, -t / v)
                }
            }
            _ => unreachable!(),
        }
    }

    fn model(&self) -> Option<&LevyModel> {
        match self {
            MeanJumpMeasure::VertexSlope { model, .. }
            | MeanJumpMeasure::FsSlope { model, .. }
            | MeanJumpMeasure::IsInverseSlope { model, .. } => Some(model),
            _ => None,
        }
    }

    /// Total mass of `{index in r, size in [floor, inf)}`.
    pub fn mass(&self, r: IndexRange, size_floor: f64) -> Result<f64> {
        self.rectangle_mass(r, size_floor, f64::INFINITY)
    }

    /// Mass of the rectangle `{index in r, size in [size_lo, size_hi)}`.
    pub fn rectangle_mass(&self, r: IndexRange, size_lo: f64, size_hi: f64) -> Result<f64> {
        if r.is_empty() || !(size_hi > size_lo) {
            return Ok(0.0);
        }
        match self {
            MeanJumpMeasure::Discrete { atoms } => Ok(atoms
                .iter()
                .filter(|a| a.index > r.lo && a.index <= r.hi)
                .filter(|a| a.size >= size_lo && a.size < size_hi)
                .map(|a| a.mass)
                .sum()),
            MeanJumpMeasure::StationaryAtoms { sizes } => {
                if !r.lo.is_finite() && r.hi > 0.0 {
                    return Err(Error::domain(
                        "stationary measure has infinite mass over unbounded index ranges",
                    ));
                }
                let len = (r.hi - r.lo.max(0.0)).max(0.0);
                Ok(sizes
                    .iter()
                    .filter(|a| a.size >= size_lo && a.size < size_hi)
                    .map(|a| a.rate * len)
                    .sum::<f64>())
            }
            _ => {
                let lambda = self.lambda();
                let prob = prob_fn(self.model().unwrap(), CdfRoute::Scaled);
                let me = self.clone();
                let g = move |t: f64| {
                    (-lambda * t).exp() / t * me.index_window(prob.as_ref(), t, r)
                };
                Ok(integrate_sizes(&g, size_lo, size_hi))
            }
        }
    }

    /// `\int kernel(index, size) Pi(d index, d size)` over the rectangle.
    pub fn kernel_integral(
        &self,
        r: IndexRange,
        size_lo: f64,
        size_hi: f64,
        kernel: &(dyn Fn(f64, f64) -> f64 + Sync),
    ) -> Result<f64> {
        if r.is_empty() {
            return Ok(0.0);
        }
        self.kernel_integral_region(size_lo, size_hi, &|_| Some((r.lo, r.hi)), kernel)
    }

    /// `\int kernel(index, size) Pi` over `{size in [size_lo, size_hi),
    /// index in region(size)}` for a size-dependent index interval
    /// `(lo, hi]`. This is the workhorse behind the integral criteria, whose
    /// regions are boundary sets like `{x >= h(t)}`.
    pub fn kernel_integral_region(
        &self,
        size_lo: f64,
        size_hi: f64,
        region: &dyn Fn(f64) -> Option<(f64, f64)>,
        kernel: &(dyn Fn(f64, f64) -> f64 + Sync),
    ) -> Result<f64> {
        if !(size_hi > size_lo) {
            return Ok(0.0);
        }
        match self {
            MeanJumpMeasure::Discrete { atoms } => Ok(atoms
                .iter()
                .filter(|a| a.size >= size_lo && a.size < size_hi)
                .filter_map(|a| {
                    let (lo, hi) = region(a.size)?;
                    (a.index > lo && a.index <= hi).then(|| a.mass * kernel(a.index, a.size))
                })
                .sum()),
            MeanJumpMeasure::StationaryAtoms { sizes } => {
                let mut acc = 0.0;
                for a in sizes.iter().filter(|a| a.size >= size_lo && a.size < size_hi) {
                    if let Some((lo, hi)) = region(a.size) {
                        if !lo.is_finite() {
                            return Err(Error::domain(
                                "unbounded index range on stationary measure",
                            ));
                        }
                        let g = |t: f64| a.rate * kernel(t, a.size);
                        acc += integrate_index_interval(&g, lo.max(0.0), hi);
                    }
                }
                Ok(acc)
            }
            _ => {
                let lambda = self.lambda();
                let prob = prob_fn(self.model().unwrap(), CdfRoute::Scaled);
                let me = self.clone();
                // size variable is t; inner Stieltjes integral over the index.
                let g = move |t: f64| {
                    let Some((rlo, rhi)) = region(t) else {
                        return 0.0;
                    };
                    let cdf = |v: f64| me.index_cdf_at(prob.as_ref(), t, v);
                    let (lo, hi) = index_bracket(&me, IndexRange::new(rlo, rhi), t);
                    if !(hi > lo) {
                        return 0.0;
                    }
                    let inner = stieltjes(&|v| kernel(v, t), &cdf, lo, hi, 1e-7);
                    (-lambda * t).exp() / t * inner
                };
                Ok(integrate_sizes(&g, size_lo, size_hi))
            }
        }
    }

    /// Laplace exponent `Psi_index(w) = \int (1 - e^{-w size}) Pi({index <= I}, d size)`.
    pub fn psi(&self, index_hi: f64, w: f64) -> Result<f64> {
        if w < 0.0 {
            return Err(Error::domain("Laplace argument must be nonnegative"));
        }
        if w == 0.0 {
            return Ok(0.0);
        }
        match self {
            MeanJumpMeasure::Discrete { atoms } => Ok(atoms
                .iter()
                .filter(|a| a.index <= index_hi)
                .map(|a| a.mass * (-(-w * a.size).exp_m1()))
                .sum()),
            MeanJumpMeasure::StationaryAtoms { sizes } => Ok(sizes
                .iter()
                .map(|a| a.rate * index_hi.max(0.0) * (-(-w * a.size).exp_m1()))
                .sum()),
            _ => {
                let lambda = self.lambda();
                let prob = prob_fn(self.model().unwrap(), CdfRoute::Scaled);
                let me = self.clone();
                let r = IndexRange::up_to(index_hi);
                let g = move |t: f64| {
                    (-(-w * t).exp_m1()) * (-lambda * t).exp() / t
                        * me.index_window(prob.as_ref(), t, r)
                };
                let res = dyadic_shells_down(&g, 1.0, SIZE_REL_CUT, SIZE_MAX_DEPTH, 1e-12);
                if res.tail_suspect {
                    return Err(Error::DivergenceSuspected(
                        "small-time shells of the Laplace exponent did not settle".into(),
                    ));
                }
                let upper =
                    crate::numeric::quad::dyadic_shells_up(&g, 1.0, SIZE_REL_CUT, 90, 1e-12);
                Ok(res.value + upper)
            }
        }
    }

    /// Expected total size below `floor` (truncation error of the sampler).
    pub fn truncated_mean_below(&self, r: IndexRange, floor: f64) -> Result<f64> {
        if floor <= 0.0 {
            return Ok(0.0);
        }
        match self {
            MeanJumpMeasure::Discrete { .. } | MeanJumpMeasure::StationaryAtoms { .. } => {
                self.kernel_integral(r, 0.0, floor, &|_, size| size)
            }
            _ => {
                let lambda = self.lambda();
                let prob = prob_fn(self.model().unwrap(), CdfRoute::Scaled);
                let me = self.clone();
                let g = move |t: f64| {
                    (-lambda * t).exp() * me.index_window(prob.as_ref(), t, r)
                };
                let res = dyadic_shells_down(&g, floor, SIZE_REL_CUT, SIZE_MAX_DEPTH, 1e-13);
                Ok(res.value)
            }
        }
    }

    /// Poisson-random-measure sample of jumps with `index in r` and
    /// `size >= size_floor`. Locations are drawn by inverse transform on the
    /// cumulative size-marginal (tabulated to relative accuracy `inv_tol`).
    pub fn sample(
        &self,
        r: IndexRange,
        size_floor: f64,
        inv_tol: f64,
        rng: &mut impl Rng,
    ) -> Result<JumpList> {
        match self {
            MeanJumpMeasure::Discrete { atoms } => {
                let mut jumps = Vec::new();
                for a in atoms.iter().filter(|a| a.index > r.lo && a.index <= r.hi) {
                    if a.size < size_floor {
                        continue;
                    }
                    let n = rand_distr::Poisson::new(a.mass).unwrap().sample(rng) as u64;
                    for _ in 0..n {
                        jumps.push((a.index, a.size));
                    }
                }
                let truncated = self.truncated_mean_below(r, size_floor)?;
                Ok(JumpList::new(jumps, truncated))
            }
            MeanJumpMeasure::StationaryAtoms { sizes } => {
                if !r.lo.is_finite() {
                    return Err(Error::domain("unbounded index range on stationary measure"));
                }
                let len = (r.hi - r.lo.max(0.0)).max(0.0);
                let mut jumps = Vec::new();
                for a in sizes.iter().filter(|a| a.size >= size_floor) {
                    let n = rand_distr::Poisson::new(a.rate * len).unwrap().sample(rng) as u64;
                    for _ in 0..n {
                        let u: f64 = rng.gen();
                        jumps.push((r.lo.max(0.0) + u * len, a.size));
                    }
                }
                let truncated = self.truncated_mean_below(r, size_floor)?;
                Ok(JumpList::new(jumps, truncated))
            }
            _ => self.sample_continuous(r, size_floor, inv_tol, rng),
        }
    }

    fn sample_continuous(
        &self,
        r: IndexRange,
        size_floor: f64,
        inv_tol: f64,
        rng: &mut impl Rng,
    ) -> Result<JumpList> {
        if !(size_floor > 0.0) {
            return Err(Error::parameter(
                "continuous measures need a positive size floor (mass at 0 is infinite)",
            ));
        }
        let table = self.size_marginal_table(r, size_floor)?;
        let total = table.total;
        if total > 1e7 {
            return Err(Error::parameter(format!(
                "mass {total:.3e} too large; raise the size floor"
            )));
        }
        let prob = prob_fn(self.model().unwrap(), CdfRoute::Scaled);
        let n = rand_distr::Poisson::new(total.max(1e-300)).unwrap().sample(rng) as u64;
        let mut jumps = Vec::with_capacity(n as usize);
        for _ in 0..n {
            let u: f64 = rng.gen();
            let size = table.invert(u * total, inv_tol);
            let index = self.sample_index_given_size(prob.as_ref(), size, r, inv_tol, rng);
            jumps.push((index, size));
        }
        let truncated = self.truncated_mean_below(r, size_floor)?;
        Ok(JumpList::new(jumps, truncated))
    }

    fn sample_index_given_size(
        &self,
        prob: &dyn Fn(f64, f64) -> f64,
        t: f64,
        r: IndexRange,
        inv_tol: f64,
        rng: &mut impl Rng,
    ) -> f64 {
        let (mut lo, mut hi) = index_bracket(self, r, t);
        let base = self.index_cdf_at(prob, t, lo);
        let top = self.index_cdf_at(prob, t, hi);
        if !(top > base) {
            return hi;
        }
        let target = base + rng.gen::<f64>() * (top - base);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.index_cdf_at(prob, t, mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= inv_tol * (1.0 + hi.abs()) {
                break;
            }
        }
        0.5 * (lo + hi)
    }

    /// Cumulative size-marginal on a log grid, built once per sampling call.
    fn size_marginal_table(&self, r: IndexRange, floor: f64) -> Result<SizeMarginal> {
        let lambda = self.lambda();
        let prob = prob_fn(self.model().unwrap(), CdfRoute::Scaled);
        let me = self.clone();
        let density = move |t: f64| {
            (-lambda * t).exp() / t * me.index_window(prob.as_ref(), t, r)
        };
        let t_max = (80.0 / lambda).max(floor * 4.0);
        let n = 2048usize;
        let (ln_lo, ln_hi) = (floor.ln(), t_max.ln());
        let mut xs = Vec::with_capacity(n);
        let mut ys = Vec::with_capacity(n);
        xs.push(ln_lo);
        ys.push(0.0);
        let mut acc = 0.0;
        for i in 1..n {
            let a = ln_lo + (ln_hi - ln_lo) * (i - 1) as f64 / (n - 1) as f64;
            let b = ln_lo + (ln_hi - ln_lo) * i as f64 / (n - 1) as f64;
            acc += adaptive_simpson(&|y: f64| density(y.exp()) * y.exp(), a, b, 1e-12);
            xs.push(b);
            ys.push(acc);
        }
        for i in 1..ys.len() {
            if ys[i] < ys[i - 1] {
                ys[i] = ys[i - 1];
            }
        }
        Ok(SizeMarginal { total: acc, cumulative: MonotoneCubic::new(xs, ys) })
    }
}

struct SizeMarginal {
    total: f64,
    /// cumulative mass as a function of `ln t`
    cumulative: MonotoneCubic,
}

impl SizeMarginal {
    fn invert(&self, mass: f64, tol: f64) -> f64 {
        self.cumulative.inverse(mass, tol * 1e-3).exp()
    }
}

/// Index bracket for inner integrals; finite even when the range is
/// unbounded below (slopes below the reachable range carry no mass).
fn index_bracket(m: &MeanJumpMeasure, r: IndexRange, _t: f64) -> (f64, f64) {
    match m {
        MeanJumpMeasure::VertexSlope { .. } => {
            let lo = if r.lo.is_finite() { r.lo } else { r.hi - 1e6f64.max(64.0 * r.hi.abs()) };
            (lo, r.hi)
        }
        MeanJumpMeasure::FsSlope { .. } | MeanJumpMeasure::IsInverseSlope { .. } => {
            (r.lo.max(0.0), r.hi)
        }
        _ => (r.lo, r.hi),
    }
}

/// `\int_{[lo, hi)} g dt` with dyadic handling of the origin and of
/// unbounded upper limits.
fn integrate_sizes(g: &dyn Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let cap = if hi.is_finite() { hi } else { 1.0 };
    let mut acc = 0.0;
    if lo < cap {
        if lo == 0.0 {
            acc += dyadic_shells_down(g, cap, SIZE_REL_CUT, SIZE_MAX_DEPTH, 1e-12).value;
        } else {
            acc += integrate_over_interval(g, lo, cap);
        }
    }
    if !hi.is_finite() {
        acc += crate::numeric::quad::dyadic_shells_up(g, 1.0f64.max(lo), SIZE_REL_CUT, 90, 1e-12);
        if lo > 1.0 {
            // subtract nothing: shells started at lo already
        }
    }
    acc
}

/// Index-direction integral on `(lo, hi]` that tolerates `lo = 0`.
fn integrate_index_interval(g: &dyn Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    if !(hi > lo) {
        return 0.0;
    }
    if lo <= 0.0 {
        dyadic_shells_down(g, hi, SIZE_REL_CUT, SIZE_MAX_DEPTH, 1e-12).value
    } else {
        integrate_over_interval(g, lo, hi)
    }
}

/// Adaptive integral over a finite positive interval in log coordinates.
fn integrate_over_interval(g: &dyn Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    if !(hi > lo) || !(lo > 0.0) {
        return 0.0;
    }
    adaptive_simpson(&|y: f64| g(y.exp()) * y.exp(), lo.ln(), hi.ln(), 1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;

    #[test]
    fn fs_measure_rectangle_mass_is_additive() {
        let m = MeanJumpMeasure::fs(LevyModel::cauchy(1.0, 0.0), 1.0, 0.0);
        let a = m
            .rectangle_mass(IndexRange::new(0.0, 0.5), 0.01, 0.5)
            .unwrap();
        let b = m
            .rectangle_mass(IndexRange::new(0.5, 1.0), 0.01, 0.5)
            .unwrap();
        let ab = m
            .rectangle_mass(IndexRange::new(0.0, 1.0), 0.01, 0.5)
            .unwrap();
        assert!((a + b - ab).abs() < 1e-8 * ab.max(1.0), "{a} + {b} != {ab}");
        assert!(a > 0.0 && b > 0.0);
    }

    #[test]
    fn is_measure_matches_direct_quadrature() {
        // mass over sigma in (0, 1], t in [t0, t1):
        // \int e^{-t} P(X_t <= -t) / t dt for Cauchy = F(-1) * \int e^-t/t
        let m = MeanJumpMeasure::is_regime(LevyModel::cauchy(1.0, 0.0), 1.0);
        let got = m.rectangle_mass(IndexRange::new(0.0, 1.0), 0.25, 4.0).unwrap();
        let p = 0.25; // P(Z <= -1) for standard Cauchy
        let want = p
            * crate::numeric::quad::adaptive_simpson(
                &|t: f64| (-t).exp() / t,
                0.25,
                4.0,
                1e-12,
            );
        assert!((got - want).abs() < 1e-8, "got {got} want {want}");
    }

    #[test]
    fn discrete_psi_and_mass() {
        let m = MeanJumpMeasure::Discrete {
            atoms: vec![
                Atom { index: 0.5, size: 1.0, mass: 2.0 },
                Atom { index: 1.5, size: 0.5, mass: 4.0 },
            ],
        };
        assert_eq!(m.mass(IndexRange::up_to(1.0), 0.0).unwrap(), 2.0);
        assert_eq!(m.mass(IndexRange::up_to(2.0), 0.75).unwrap(), 2.0);
        let psi = m.psi(2.0, 1.0).unwrap();
        let want = 2.0 * (1.0 - (-1.0f64).exp()) + 4.0 * (1.0 - (-0.5f64).exp());
        assert!((psi - want).abs() < 1e-14);
    }

    #[test]
    fn stationary_kernel_integral_hand_value() {
        // Pi = dt ⊗ delta_{1/2}, kernel x/t * 1{2t > x}:
        // \int_{1/4}^{1} (1/2)/t dt = (1/2) ln 4
        let m = MeanJumpMeasure::StationaryAtoms {
            sizes: vec![SizeAtom { size: 0.5, rate: 1.0 }],
        };
        let got = m
            .kernel_integral(IndexRange::new(0.0, 1.0), 0.0, 1.0, &|t, x| {
                if 2.0 * t > x {
                    x / t
                } else {
                    0.0
                }
            })
            .unwrap();
        assert!((got - 0.5 * 4.0f64.ln()).abs() < 1e-8, "got {got}");
    }

    #[test]
    fn sampled_mass_matches_poisson_mean() {
        let m = MeanJumpMeasure::fs(LevyModel::cauchy(1.0, 0.0), 1.0, 0.0);
        let r = IndexRange::new(0.0, 1.0);
        let mass = m.mass(r, 1e-4).unwrap();
        let mut rng = stream(51, 0);
        let n_runs = 400;
        let mut total = 0usize;
        for _ in 0..n_runs {
            let jl = m.sample(r, 1e-4, 1e-6, &mut rng).unwrap();
            total += jl.jumps.len();
        }
        let mean = total as f64 / n_runs as f64;
        let se = (mass / n_runs as f64).sqrt();
        assert!((mean - mass).abs() < 4.0 * se, "mean {mean}, mass {mass}");
    }

    #[test]
    fn empty_index_range_yields_empty_jump_list() {
        let m = MeanJumpMeasure::fs(LevyModel::cauchy(1.0, 0.0), 1.0, 0.0);
        let mut rng = stream(52, 0);
        let jl = m.sample(IndexRange::new(1.0, 1.0), 1e-4, 1e-6, &mut rng).unwrap();
        assert!(jl.jumps.is_empty());
    }

    #[test]
    fn zero_floor_on_continuous_measure_is_rejected() {
        let m = MeanJumpMeasure::fs(LevyModel::cauchy(1.0, 0.0), 1.0, 0.0);
        let mut rng = stream(53, 0);
        assert!(m.sample(IndexRange::new(0.0, 1.0), 0.0, 1e-6, &mut rng).is_err());
    }

    #[test]
    fn truncated_mean_is_reported_and_small() {
        let m = MeanJumpMeasure::fs(LevyModel::cauchy(1.0, 0.0), 1.0, 0.0);
        let tm = m.truncated_mean_below(IndexRange::new(0.0, 1.0), 1e-6).unwrap();
        assert!(tm > 0.0 && tm < 1e-5, "truncated mean {tm}");
    }
}
