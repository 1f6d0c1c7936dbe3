//! Small special-function helpers not worth a dependency.

/// Exponential integral `E1(x) = \int_x^\infty e^{-t}/t dt` for `x > 0`.
///
/// Series for small arguments, continued fraction beyond.
pub fn exp_integral_e1(x: f64) -> f64 {
    assert!(x > 0.0, "E1 requires x > 0");
    const EULER: f64 = 0.577_215_664_901_532_9;
    if x <= 1.0 {
        let mut sum = 0.0;
        let mut term = 1.0;
        for k in 1..=60 {
            term *= -x / k as f64;
            let add = term / k as f64;
            sum += add;
            if add.abs() < 1e-18 * (1.0 + sum.abs()) {
                break;
            }
        }
        -EULER - x.ln() - sum
    } else {
        // Lentz continued fraction for E1.
        let mut b = x + 1.0;
        let mut c = 1e308;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..=200 {
            let a = -(i as f64) * (i as f64);
            b += 2.0;
            d = 1.0 / (a * d + b);
            c = b + a / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < 1e-15 {
                break;
            }
        }
        h * (-x).exp()
    }
}

/// Survival function of the Kolmogorov distribution,
/// `Q(lambda) = 2 \sum_{k>=1} (-1)^{k-1} e^{-2 k^2 lambda^2}`.
pub fn kolmogorov_sf(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for k in 1..=100 {
        let term = sign * (-2.0 * (k as f64) * (k as f64) * lambda * lambda).exp();
        sum += term;
        if term.abs() < 1e-16 {
            break;
        }
        sign = -sign;
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e1_reference_values() {
        // Abramowitz & Stegun 5.1: E1(1) = 0.219383934..., E1(0.5) = 0.559773595...
        assert!((exp_integral_e1(1.0) - 0.219_383_934_395_520_3).abs() < 1e-12);
        assert!((exp_integral_e1(0.5) - 0.559_773_594_776_160_2).abs() < 1e-12);
        assert!((exp_integral_e1(5.0) - 1.148_295_591_016_05e-3).abs() < 1e-12);
    }

    #[test]
    fn e1_matches_quadrature() {
        let q = crate::numeric::quad::dyadic_shells_up(&|t| (-t).exp() / t, 2.0, 1e-15, 80, 1e-14);
        assert!((exp_integral_e1(2.0) - q).abs() < 1e-10);
    }

    #[test]
    fn kolmogorov_tail_values() {
        // Q(0.828) ~ 0.5 (median around 0.8276)
        assert!((kolmogorov_sf(0.8276) - 0.5).abs() < 1e-3);
        assert!(kolmogorov_sf(2.0) < 1e-3);
    }
}
