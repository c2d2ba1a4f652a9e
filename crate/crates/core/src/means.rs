//! The Stolarsky mean family.
//!
//! For `a != b` and `alpha` outside `{0, 1}`,
//!
//! ```text
//! S_alpha(a, b) = ((b^alpha - a^alpha) / (alpha (b - a)))^(1 / (alpha - 1))
//! ```
//!
//! with the logarithmic mean at `alpha = 0`, the identric mean at
//! `alpha = 1`, and `S_alpha(a, a) = a`.
//!
//! Evaluation works in ratio/log space. With `u = ln(b / a)`,
//!
//! ```text
//! S_alpha = a * exp(E),  E = (G(alpha u) - G(u)) / (alpha - 1),  G(x) = ln((e^x - 1) / x)
//! ```
//!
//! `E` is a divided difference in `alpha` and loses digits as `alpha -> 1`.
//! Near `alpha = 1` we rewrite `Q - 1 = (alpha - 1) M` where `Q` is the
//! ratio inside the power, giving `E = M ln(1 + (alpha - 1) M) / ((alpha - 1) M)`
//! with `M` assembled from `e^x - 1 - x` terms; this form is exact (not a
//! truncated expansion) and reduces to the identric mean at `alpha = 1`.

use serde::Serialize;
use thiserror::Error;

use crate::bracket::{bisect, brackets};
use crate::stable::{expm1_minus_x, expm1_minus_x_rel, exprel, log1p_ratio, log_exprel, log_ratio};

/// `|alpha|` or `|alpha - 1|` below this classifies as near-singular.
pub const NEAR_SINGULAR: f64 = 1e-7;

/// `ln(b/a)` (scaled by `1 + |alpha|`) below this uses the midpoint expansion.
pub const NEAR_EQUAL_LOG_RATIO: f64 = 1e-8;

/// The near-one form is used for `|alpha - 1| <= NEAR_ONE_WINDOW` and
/// `|alpha - 1| ln(b/a) <= 1`, which keeps the power base within `(1/e, e)`.
const NEAR_ONE_WINDOW: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeanError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("overflow: {0}")]
    Overflow(String),
    #[error("target {c} is not strictly inside ({a}, {b})")]
    OutOfRange { a: f64, b: f64, c: f64 },
    #[error("target {c} is not attained for alpha in [{lo}, {hi}]")]
    NotBracketed { c: f64, lo: f64, hi: f64 },
    #[error("alpha search stalled with residual {residual:e} above tolerance")]
    NotConverged { residual: f64 },
}

/// Which evaluation route a parameter value takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Branch {
    Generic,
    /// `alpha == 0` exactly: logarithmic mean.
    LogCase,
    /// `alpha == 1` exactly: identric mean.
    IdentricCase,
    NearZero,
    NearOne,
}

/// The family parameter, tagged with its [`Branch`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Alpha {
    value: f64,
    branch: Branch,
}

impl Alpha {
    pub fn new(value: f64) -> Result<Self, MeanError> {
        if !value.is_finite() {
            return Err(MeanError::Domain(format!("alpha must be finite, got {value}")));
        }
        Ok(Alpha { value, branch: classify(value) })
    }

    pub fn value(self) -> f64 {
        self.value
    }

    pub fn branch(self) -> Branch {
        self.branch
    }

    /// True exactly for 0 and 1, where the solution families carry a log factor.
    pub fn is_log_family(self) -> bool {
        matches!(self.branch, Branch::LogCase | Branch::IdentricCase)
    }
}

fn classify(value: f64) -> Branch {
    if value == 0.0 {
        Branch::LogCase
    } else if value == 1.0 {
        Branch::IdentricCase
    } else if value.abs() < NEAR_SINGULAR {
        Branch::NearZero
    } else if (value - 1.0).abs() < NEAR_SINGULAR {
        Branch::NearOne
    } else {
        Branch::Generic
    }
}

/// Ordered pair of positive endpoints, normalised so `a <= b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    a: f64,
    b: f64,
    swapped: bool,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self, MeanError> {
        for (name, v) in [("a", a), ("b", b)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(MeanError::Domain(format!(
                    "endpoint {name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(if a <= b {
            Interval { a, b, swapped: false }
        } else {
            Interval { a: b, b: a, swapped: true }
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Whether the constructor received the endpoints in descending order.
    pub fn swapped(&self) -> bool {
        self.swapped
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    pub fn is_degenerate(&self) -> bool {
        self.a == self.b
    }

    /// `a < c < b`.
    pub fn contains_open(&self, c: f64) -> bool {
        self.a < c && c < self.b
    }
}

/// `S_alpha(a, b)`.
pub fn stolarsky_mean(alpha: Alpha, iv: &Interval) -> Result<f64, MeanError> {
    let (a, b) = (iv.a, iv.b);
    if !(a > 0.0) {
        return Err(MeanError::Domain(format!("endpoint must be positive, got {a}")));
    }
    if a == b {
        return Ok(a);
    }
    match alpha.branch {
        Branch::LogCase => return Ok(logarithmic_mean(iv)),
        Branch::IdentricCase => return identric_mean(iv),
        _ => {}
    }
    let al = alpha.value;
    let u = log_ratio(a, b);
    if (1.0 + al.abs()) * u < NEAR_EQUAL_LOG_RATIO {
        return Ok(near_equal(al, a, b));
    }
    if let Some(s) = power_form(al, a, b) {
        return Ok(s);
    }
    let delta = al - 1.0;
    let exponent = if delta.abs() <= NEAR_ONE_WINDOW && (delta * u).abs() <= 1.0 {
        exponent_near_one(delta, u)
    } else {
        exponent_direct(al, u)
    };
    scale_into(a, b, exponent)
}

/// Logarithmic mean `(b - a) / (ln b - ln a)`; agrees bit-for-bit with
/// `stolarsky_mean` at `alpha = 0`.
pub fn logarithmic_mean(iv: &Interval) -> f64 {
    let (a, b) = (iv.a, iv.b);
    if a == b {
        return a;
    }
    let u = log_ratio(a, b);
    ((b - a) / u).clamp(a, b)
}

/// Identric mean `exp((b ln b - a ln a) / (b - a) - 1)`.
pub fn identric_mean(iv: &Interval) -> Result<f64, MeanError> {
    let (a, b) = (iv.a, iv.b);
    if a == b {
        return Ok(a);
    }
    let u = log_ratio(a, b);
    scale_into(a, b, identric_exponent(u))
}

/// `ln(I(a, b) / a) = u / (1 - e^-u) - 1`, written without cancellation.
fn identric_exponent(u: f64) -> f64 {
    expm1_minus_x(-u) / -(-u).exp_m1()
}

fn exponent_direct(al: f64, u: f64) -> f64 {
    let x = al * u;
    let g_u = log_exprel(u);
    if x > 1.0 {
        // G(x) = x - ln x + ln(1 - e^-x); keep x / (alpha - 1) from overflowing.
        u * (al / (al - 1.0)) - (al.ln() + u.ln() - (-(-x).exp()).ln_1p() + g_u) / (al - 1.0)
    } else if x < -1.0 {
        ((-x.exp()).ln_1p() - (-al).ln() - u.ln() - g_u) / (al - 1.0)
    } else {
        (log_exprel(x) - g_u) / (al - 1.0)
    }
}

/// The defining formula evaluated as written, when its rounding error is
/// provably small: the cancellation in `b^alpha - a^alpha` and the
/// `1 / (alpha - 1)` power together amplify roundoff by at most 8.
fn power_form(al: f64, a: f64, b: f64) -> Option<f64> {
    let (pa, pb) = (a.powf(al), b.powf(al));
    let diff = pb - pa;
    if !(pa.is_normal() && pb.is_normal() && diff.is_normal()) {
        return None;
    }
    let amplification = ((pa.abs() + pb.abs()) / diff.abs() + 3.0) / (al - 1.0).abs();
    if !(amplification <= 8.0) {
        return None;
    }
    let s = (diff / (al * (b - a))).powf(1.0 / (al - 1.0));
    s.is_normal().then(|| s.clamp(a, b))
}

/// Exponent for `alpha = 1 + delta` with `|delta|` moderate.
fn exponent_near_one(delta: f64, u: f64) -> f64 {
    let z = delta * u;
    let num = if u <= 1.0 {
        expm1_minus_x(-u) + u * expm1_minus_x_rel(z)
    } else {
        u * exprel(z) + (-u).exp_m1()
    };
    let m = num / ((1.0 + delta) * -(-u).exp_m1());
    m * log1p_ratio(delta * m)
}

/// Second-order midpoint expansion for `b` very close to `a`:
/// `S = m (1 + (alpha - 2) / 6 * rho^2)`, `m = (a + b) / 2`, `rho = (b - a) / (a + b)`.
fn near_equal(al: f64, a: f64, b: f64) -> f64 {
    let m = 0.5 * a + 0.5 * b;
    let rho = (0.5 * (b - a)) / m;
    (m * (1.0 + (al - 2.0) / 6.0 * rho * rho)).clamp(a, b)
}

fn scale_into(a: f64, b: f64, exponent: f64) -> Result<f64, MeanError> {
    if !exponent.is_finite() {
        return Err(MeanError::Overflow(format!("log-space exponent is {exponent}")));
    }
    let mut s = a * exponent.exp();
    if !s.is_finite() || s == 0.0 {
        s = (a.ln() + exponent).exp();
    }
    if !s.is_finite() {
        return Err(MeanError::Overflow("result is not representable".into()));
    }
    Ok(s.clamp(a, b))
}

/// Search settings for [`invert_alpha_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaSearch {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
    /// Accept when `|S_alpha - c| <= rel_tol * c`.
    pub rel_tol: f64,
}

impl Default for AlphaSearch {
    fn default() -> Self {
        AlphaSearch { lo: -64.0, hi: 64.0, steps: 200, rel_tol: 1e-12 }
    }
}

/// The `alpha` whose Stolarsky mean of `iv` is `c`.
pub fn invert_alpha(iv: &Interval, c: f64) -> Result<Alpha, MeanError> {
    invert_alpha_with(iv, c, &AlphaSearch::default())
}

/// [`invert_alpha`] with explicit search settings. `alpha -> S_alpha(a, b)`
/// is increasing for `a != b`, so plain bisection applies.
pub fn invert_alpha_with(iv: &Interval, c: f64, search: &AlphaSearch) -> Result<Alpha, MeanError> {
    if !iv.contains_open(c) {
        return Err(MeanError::OutOfRange { a: iv.a, b: iv.b, c });
    }
    let mean_at = |al: f64| -> Result<f64, MeanError> { stolarsky_mean(Alpha::new(al)?, iv) };
    let f_lo = mean_at(search.lo)? - c;
    let f_hi = mean_at(search.hi)? - c;
    if !brackets(f_lo, f_hi) {
        return Err(MeanError::NotBracketed { c, lo: search.lo, hi: search.hi });
    }
    let out = bisect(|al| Ok::<_, MeanError>(mean_at(al)? - c), search.lo, search.hi, f_lo, 0.0, search.steps)?;
    let mut best = (out.root, (mean_at(out.root)? - c).abs());
    for cand in [out.lo, out.hi] {
        let r = (mean_at(cand)? - c).abs();
        if r < best.1 {
            best = (cand, r);
        }
    }
    if best.1 > search.rel_tol * c {
        return Err(MeanError::NotConverged { residual: best.1 / c });
    }
    Alpha::new(best.0)
}
