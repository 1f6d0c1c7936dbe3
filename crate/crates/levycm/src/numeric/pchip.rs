//! Monotone piecewise-cubic interpolation (Fritsch-Carlson).
//!
//! Used to cache standardized distribution functions and cumulative
//! integrals: the interpolant preserves monotonicity of the data, so cached
//! CDFs stay valid distribution functions.

#[derive(Debug, Clone)]
pub struct MonotoneCubic {
    xs: Vec<f64>,
    ys: Vec<f64>,
    ds: Vec<f64>,
}

impl MonotoneCubic {
    /// Build from strictly increasing `xs` and (weakly) monotone `ys`.
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Self {
        assert!(xs.len() == ys.len() && xs.len() >= 2);
        let n = xs.len();
        let mut slopes = vec![0.0; n - 1];
        for i in 0..n - 1 {
            slopes[i] = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
        }
        let mut ds = vec![0.0; n];
        ds[0] = slopes[0];
        ds[n - 1] = slopes[n - 2];
        for i in 1..n - 1 {
            if slopes[i - 1] * slopes[i] <= 0.0 {
                ds[i] = 0.0;
            } else {
                let w1 = 2.0 * (xs[i + 1] - xs[i]) + (xs[i] - xs[i - 1]);
                let w2 = (xs[i + 1] - xs[i]) + 2.0 * (xs[i] - xs[i - 1]);
                ds[i] = (w1 + w2) / (w1 / slopes[i - 1] + w2 / slopes[i]);
            }
        }
        // Fritsch-Carlson limiter keeps the interpolant monotone.
        for i in 0..n - 1 {
            if slopes[i] == 0.0 {
                ds[i] = 0.0;
                ds[i + 1] = 0.0;
            } else {
                let a = ds[i] / slopes[i];
                let b = ds[i + 1] / slopes[i];
                let s = a * a + b * b;
                if s > 9.0 {
                    let tau = 3.0 / s.sqrt();
                    ds[i] = tau * a * slopes[i];
                    ds[i + 1] = tau * b * slopes[i];
                }
            }
        }
        MonotoneCubic { xs, ys, ds }
    }

    pub fn x_min(&self) -> f64 {
        self.xs[0]
    }

    pub fn x_max(&self) -> f64 {
        *self.xs.last().unwrap()
    }

    /// Evaluate at `x`; clamps outside the table range.
    pub fn eval(&self, x: f64) -> f64 {
        if x <= self.xs[0] {
            return self.ys[0];
        }
        if x >= *self.xs.last().unwrap() {
            return *self.ys.last().unwrap();
        }
        let i = match self.xs.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
            Ok(i) => return self.ys[i],
            Err(i) => i - 1,
        };
        let h = self.xs[i + 1] - self.xs[i];
        let t = (x - self.xs[i]) / h;
        let h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
        let h10 = t * (1.0 - t) * (1.0 - t);
        let h01 = t * t * (3.0 - 2.0 * t);
        let h11 = t * t * (t - 1.0);
        h00 * self.ys[i] + h10 * h * self.ds[i] + h01 * self.ys[i + 1] + h11 * h * self.ds[i + 1]
    }

    /// Invert a non-decreasing interpolant by bisection.
    pub fn inverse(&self, y: f64, tol: f64) -> f64 {
        let (mut lo, mut hi) = (self.x_min(), self.x_max());
        if y <= self.eval(lo) {
            return lo;
        }
        if y >= self.eval(hi) {
            return hi;
        }
        while hi - lo > tol * (1.0 + hi.abs()) {
            let m = 0.5 * (lo + hi);
            if self.eval(m) < y {
                lo = m;
            } else {
                hi = m;
            }
        }
        0.5 * (lo + hi)
    }
}
