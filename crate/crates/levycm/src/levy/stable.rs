//! Standardized alpha-stable law in the S(alpha, beta; 1) parametrization:
//! Chambers-Mallows-Stuck sampling, distribution function by Zolotarev-type
//! quadrature, and a cached monotone-cubic table for bulk evaluation.
//!
//! Conventions: `Z ~ S(alpha, beta; 1)` has characteristic function
//! `exp(-|t|^alpha (1 - i beta tan(pi alpha / 2) sgn t))` for `alpha != 1`;
//! `alpha = 1` is supported for `beta = 0` only (skew at alpha = 1 is
//! represented by a location shift at the model level). For `alpha = 2` the
//! law is `N(0, 2)`.

use crate::error::{Error, Result};
use crate::numeric::pchip::MonotoneCubic;
use crate::numeric::quad::adaptive_simpson;
use rand::Rng;
use statrs::function::gamma::gamma;
use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::{Arc, Mutex, OnceLock};

#[inline]
fn clamp_open01(u: f64) -> f64 {
    u.clamp(1e-15, 1.0 - 1e-15)
}

/// Positivity parameter `rho = P(Z > 0)` from the skew parameter.
pub fn beta_to_rho(alpha: f64, beta: f64) -> f64 {
    if alpha == 2.0 {
        return 0.5;
    }
    0.5 + (beta * (PI * alpha / 2.0).tan()).atan() / (PI * alpha)
}

/// Skew parameter from the positivity parameter; errors when `rho` is not
/// attainable for the given `alpha` (for `alpha > 1`, `rho` must lie in
/// `[1 - 1/alpha, 1/alpha]`).
pub fn rho_to_beta(alpha: f64, rho: f64) -> Result<f64> {
    if alpha == 2.0 {
        if (rho - 0.5).abs() > 1e-12 {
            return Err(Error::parameter("alpha = 2 forces rho = 1/2"));
        }
        return Ok(0.0);
    }
    let ang = PI * alpha * (rho - 0.5);
    if ang.abs() >= FRAC_PI_2 - 1e-12 {
        // Boundary values correspond to one-sided jump measures.
        if alpha < 1.0 && (rho == 1.0 || rho == 0.0) {
            return Ok(if rho == 1.0 { 1.0 } else { -1.0 });
        }
        return Err(Error::parameter(format!(
            "rho = {rho} is not attainable for alpha = {alpha}"
        )));
    }
    let beta = ang.tan() / (PI * alpha / 2.0).tan();
    if beta.abs() > 1.0 + 1e-9 {
        return Err(Error::parameter(format!(
            "rho = {rho} requires |beta| > 1 at alpha = {alpha}"
        )));
    }
    Ok(beta.clamp(-1.0, 1.0))
}

/// One standardized draw by the Chambers-Mallows-Stuck construction.
pub fn sample_standard(alpha: f64, beta: f64, rng: &mut impl Rng) -> f64 {
    if alpha == 2.0 {
        let u = clamp_open01(rng.gen::<f64>());
        let w = -clamp_open01(rng.gen::<f64>()).ln();
        // Box-Muller-free: 2 sqrt(W) sin(U) with U uniform on (-pi/2, pi/2)
        // has law N(0, 2), matching S(2, *; 1).
        return 2.0 * w.sqrt() * ((u - 0.5) * PI).sin();
    }
    let u = (clamp_open01(rng.gen::<f64>()) - 0.5) * PI;
    let w = -clamp_open01(rng.gen::<f64>()).ln();
    if alpha == 1.0 {
        debug_assert!(beta == 0.0, "alpha = 1 supports beta = 0 only");
        return u.tan();
    }
    let theta0 = (beta * (PI * alpha / 2.0).tan()).atan() / alpha;
    let at0 = alpha * theta0;
    let pre = at0.cos().powf(-1.0 / alpha);
    let s1 = (alpha * (theta0 + u)).sin() / u.cos().powf(1.0 / alpha);
    let s2 = ((at0 + (alpha - 1.0) * u).cos() / w).powf((1.0 - alpha) / alpha);
    pre * s1 * s2
}

fn ln_v(theta: f64, alpha: f64, theta0: f64) -> f64 {
    let at0 = alpha * theta0;
    let q = alpha / (alpha - 1.0);
    let ct = theta.cos();
    let st = (alpha * (theta0 + theta)).sin();
    let c2 = (at0 + (alpha - 1.0) * theta).cos();
    at0.cos().ln() / (alpha - 1.0) + q * (ct.ln() - st.ln()) + c2.ln() - ct.ln()
}

/// `P(Z <= x)` for `x > 0` and `alpha != 1, 2`, by the integral
/// representation over the Zolotarev angle.
fn cdf_positive_branch(alpha: f64, beta: f64, x: f64) -> f64 {
    let theta0 = (beta * (PI * alpha / 2.0).tan()).atan() / alpha;
    let ln_a = (alpha / (alpha - 1.0)) * x.ln();
    // Integrand exp(-A V(theta)), monotone on the angle domain.
    let f = |theta: f64| -> f64 {
        let e = ln_a + ln_v(theta, alpha, theta0);
        if e.is_nan() {
            // Only occurs from inf - inf exactly at the clipped endpoints.
            return 0.0;
        }
        if e > 700.0 {
            0.0
        } else {
            (-e.exp()).exp()
        }
    };
    let eps = 1e-12;
    let lo = -theta0 + eps;
    let hi = FRAC_PI_2 - eps;
    let integral = if hi <= lo {
        0.0
    } else {
        // Split at the transition angle where A V = 1 so the adaptive rule
        // concentrates nodes on the moving front.
        let g = |theta: f64| ln_a + ln_v(theta, alpha, theta0);
        let (glo, ghi) = (g(lo), g(hi));
        let mut split = None;
        if glo.is_finite() && ghi.is_finite() && glo * ghi < 0.0 {
            let (mut a, mut b) = (lo, hi);
            for _ in 0..80 {
                let m = 0.5 * (a + b);
                if g(m).signum() == glo.signum() {
                    a = m;
                } else {
                    b = m;
                }
            }
            split = Some(0.5 * (a + b));
        }
        match split {
            Some(m) => {
                adaptive_simpson(&f, lo, m, 5e-12) + adaptive_simpson(&f, m, hi, 5e-12)
            }
            None => adaptive_simpson(&f, lo, hi, 1e-11),
        }
    };
    let c1 = if alpha < 1.0 { (FRAC_PI_2 - theta0) / PI } else { 1.0 };
    let s = if alpha < 1.0 { 1.0 } else { -1.0 };
    (c1 + s * integral / PI).clamp(0.0, 1.0)
}

/// Distribution function of `S(alpha, beta; 1)` by direct quadrature.
pub fn cdf_standard(alpha: f64, beta: f64, x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if alpha == 2.0 {
        return normal_cdf(x / std::f64::consts::SQRT_2);
    }
    if alpha == 1.0 {
        debug_assert!(beta == 0.0, "alpha = 1 supports beta = 0 only");
        return 0.5 + x.atan() / PI;
    }
    if x == f64::INFINITY {
        return 1.0;
    }
    if x == f64::NEG_INFINITY {
        return 0.0;
    }
    if x > 0.0 {
        cdf_positive_branch(alpha, beta, x)
    } else if x < 0.0 {
        1.0 - cdf_positive_branch(alpha, -beta, -x)
    } else {
        let theta0 = (beta * (PI * alpha / 2.0).tan()).atan() / alpha;
        (FRAC_PI_2 - theta0) / PI
    }
}

/// Standard normal distribution function.
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * statrs::function::erf::erfc(-z / std::f64::consts::SQRT_2)
}

/// Tail constants: `P(Z > z) ~ tail_plus / alpha * z^{-alpha}` as
/// `z -> infinity`, and symmetrically for the lower tail. These equal the
/// Levy measure densities' integral constants `c_+`, `c_-`.
pub fn tail_constants(alpha: f64, beta: f64) -> (f64, f64) {
    if alpha == 2.0 {
        return (0.0, 0.0);
    }
    if alpha == 1.0 {
        // Cauchy: nu(dx) = |x|^{-2} dx / pi.
        return (1.0 / PI, 1.0 / PI);
    }
    // |Gamma(-alpha) cos(pi alpha / 2)| via Gamma(2 - alpha).
    let k = (gamma(2.0 - alpha) * (PI * alpha / 2.0).cos() / (alpha * (1.0 - alpha))).abs();
    let total = 1.0 / k;
    (total * (1.0 + beta) / 2.0, total * (1.0 - beta) / 2.0)
}

/// Cached standardized CDF: monotone-cubic table on an asinh grid with
/// first-order tail formulas beyond the table range.
pub struct StableCdf {
    pub alpha: f64,
    pub beta: f64,
    table: MonotoneCubic,
    c_plus: f64,
    c_minus: f64,
    z_max: f64,
}

impl StableCdf {
    fn build(alpha: f64, beta: f64) -> Self {
        const S_MAX: f64 = 35.0;
        const N: usize = 8193;
        let xs: Vec<f64> = (0..N)
            .map(|i| -S_MAX + 2.0 * S_MAX * i as f64 / (N - 1) as f64)
            .collect();
        let mut ys: Vec<f64> = xs.iter().map(|&s| cdf_standard(alpha, beta, s.sinh())).collect();
        // Quadrature noise in the far tails must not break monotonicity.
        for i in 1..ys.len() {
            if ys[i] < ys[i - 1] {
                ys[i] = ys[i - 1];
            }
        }
        let (c_plus, c_minus) = tail_constants(alpha, beta);
        StableCdf {
            alpha,
            beta,
            table: MonotoneCubic::new(xs, ys),
            c_plus,
            c_minus,
            z_max: S_MAX.sinh(),
        }
    }

    /// `P(Z <= z)`, accurate to about 1e-8 absolute.
    pub fn eval(&self, z: f64) -> f64 {
        if z > self.z_max {
            return (1.0 - self.c_plus / self.alpha * z.powf(-self.alpha)).min(1.0);
        }
        if z < -self.z_max {
            return (self.c_minus / self.alpha * (-z).powf(-self.alpha)).max(0.0);
        }
        self.table.eval(z.asinh())
    }
}

static CDF_CACHE: OnceLock<Mutex<HashMap<(u64, u64), Arc<StableCdf>>>> = OnceLock::new();

/// Shared cached table for `(alpha, beta)`. The cache is process-global and
/// guarded; entries are immutable once built, so results are deterministic.
pub fn std_cdf_cached(alpha: f64, beta: f64) -> Arc<StableCdf> {
    let key = ((alpha + 0.0).to_bits(), (beta + 0.0).to_bits());
    let cache = CDF_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return Arc::clone(hit);
    }
    let built = Arc::new(StableCdf::build(alpha, beta));
    let mut guard = cache.lock().unwrap();
    Arc::clone(guard.entry(key).or_insert(built))
}
