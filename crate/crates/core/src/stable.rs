//! Cancellation-safe elementary helpers built on `exp_m1` and `ln_1p`.

/// `e^x - 1 - x` without cancellation near zero.
pub fn expm1_minus_x(x: f64) -> f64 {
    if x.abs() < 0.7 {
        // Taylor tail x^2/2! + x^3/3! + ...; 30 terms reach 1e-17 relative at |x| = 0.7.
        let mut term = x * x / 2.0;
        let mut sum = term;
        for k in 3..32 {
            term *= x / k as f64;
            sum += term;
            if term.abs() <= f64::EPSILON * 0.25 * sum.abs() {
                break;
            }
        }
        sum
    } else {
        x.exp_m1() - x
    }
}

/// `(e^x - 1) / x`, equal to 1 at the origin.
pub fn exprel(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        x.exp_m1() / x
    }
}

/// `(e^x - 1 - x) / x`, equal to 0 at the origin.
pub fn expm1_minus_x_rel(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        expm1_minus_x(x) / x
    }
}

/// `ln((e^x - 1) / x)` for any finite `x`, with value 0 at the origin.
///
/// Uses `ln_1p` on the small-argument tail for `|x| <= 1` and an
/// overflow-free split otherwise.
pub fn log_exprel(x: f64) -> f64 {
    if x > 1.0 {
        x + (-(-x).exp()).ln_1p() - x.ln()
    } else if x < -1.0 {
        (-x.exp()).ln_1p() - (-x).ln()
    } else if x == 0.0 {
        0.0
    } else {
        (expm1_minus_x(x) / x).ln_1p()
    }
}

/// `ln(1 + z) / z`, equal to 1 at the origin.
pub fn log1p_ratio(z: f64) -> f64 {
    if z == 0.0 {
        1.0
    } else {
        z.ln_1p() / z
    }
}

/// `ln(b / a)` for `0 < a <= b`, accurate when `b` is close to `a`.
pub fn log_ratio(a: f64, b: f64) -> f64 {
    let q = b / a;
    if q <= 2.0 {
        ((b - a) / a).ln_1p()
    } else if q.is_finite() && q.is_normal() {
        q.ln()
    } else {
        b.ln() - a.ln()
    }
}
