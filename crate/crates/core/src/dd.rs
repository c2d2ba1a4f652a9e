//! Double-double arithmetic (about 32 significant digits).
//!
//! Used where the proof quantities cancel catastrophically as `r -> 0`.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

const LN2: Dd = Dd { hi: std::f64::consts::LN_2, lo: 2.319_046_813_846_299_6e-17 };

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn new(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact sum of two doubles.
    pub fn sum(a: f64, b: f64) -> Dd {
        let (hi, lo) = two_sum(a, b);
        Dd { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite()
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn sqr(self) -> Dd {
        self * self
    }

    /// Multiplies by `2^k` exactly.
    fn ldexp(self, k: i32) -> Dd {
        let f = 2f64.powi(k);
        Dd { hi: self.hi * f, lo: self.lo * f }
    }

    pub fn powi(self, n: i32) -> Dd {
        let mut base = if n < 0 { Dd::ONE / self } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = Dd::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base.sqr();
            e >>= 1;
        }
        acc
    }

    /// `e^self`.
    pub fn exp(self) -> Dd {
        if self.hi > 709.78 {
            return Dd::new(f64::INFINITY);
        }
        if self.hi < -745.2 {
            return Dd::ZERO;
        }
        let k = (self.hi / LN2.hi).round();
        // r in [-ln2/2, ln2/2], then scaled by 2^-10
        let r = (self - LN2 * Dd::new(k)).ldexp(-10);
        // s = e^r - 1 by Taylor; |r| < 3.4e-4 so 10 terms exceed double-double precision.
        let mut term = r;
        let mut s = r;
        for n in 2..=12 {
            term = term * r / Dd::new(n as f64);
            s = s + term;
        }
        // (1 + s)^2 - 1 = s (2 + s), ten times
        for _ in 0..10 {
            s = s * (s + Dd::new(2.0));
        }
        let k = k as i32;
        // split the power of two so subnormal results do not lose the scale
        (s + Dd::ONE).ldexp(k / 2).ldexp(k - k / 2)
    }

    /// Natural logarithm; NaN for non-positive input.
    pub fn ln(self) -> Dd {
        if !(self.hi > 0.0) {
            return Dd::new(f64::NAN);
        }
        if self.hi.is_infinite() {
            return self;
        }
        // x = m 2^k with m near 1, so e^-y below stays well inside the normal range
        let k = self.hi.log2().round() as i32;
        let m = self.ldexp(-k);
        // Newton on exp: y <- y + m e^-y - 1; each step doubles the digits.
        let mut y = Dd::new(m.hi.ln());
        for _ in 0..2 {
            y = y + m * (-y).exp() - Dd::ONE;
        }
        y + LN2 * Dd::new(k as f64)
    }

    /// `self^p` for positive `self`.
    pub fn powf(self, p: Dd) -> Dd {
        (p * self.ln()).exp()
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Dd {
        Dd::new(x)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        self + (-o)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, o: Dd) -> Dd {
        // long division with two correction terms
        let q1 = self.hi / o.hi;
        let r = self - o * Dd::new(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * Dd::new(q2);
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::new(q3)
    }
}
