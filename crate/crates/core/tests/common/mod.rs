//! Test-only helpers: an arbitrary-precision evaluator of the raw mean
//! formulas, a seeded generator, and small numeric utilities.

#![allow(dead_code)]

use astro_float::{BigFloat, Consts, RoundingMode};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const PREC: usize = 384;
const RM: RoundingMode = RoundingMode::ToEven;

/// Evaluates the closed-form definitions directly, in 384-bit arithmetic.
/// Independent of the library's log-space evaluation.
pub struct Oracle {
    cc: Consts,
}

impl Oracle {
    pub fn new() -> Self {
        Oracle { cc: Consts::new().expect("constants cache") }
    }

    fn big(x: f64) -> BigFloat {
        BigFloat::from_f64(x, PREC)
    }

    pub fn to_f64(x: &BigFloat) -> f64 {
        let s = format!("{x}");
        s.parse().unwrap_or_else(|_| panic!("unparseable oracle output {s}"))
    }

    fn ln(&mut self, x: &BigFloat) -> BigFloat {
        x.ln(PREC, RM, &mut self.cc)
    }

    fn exp(&mut self, x: &BigFloat) -> BigFloat {
        x.exp(PREC, RM, &mut self.cc)
    }

    fn pow(&mut self, x: &BigFloat, y: &BigFloat) -> BigFloat {
        let l = self.ln(x);
        self.exp(&l.mul(y, PREC, RM))
    }

    /// `((b^al - a^al) / (al (b - a)))^(1/(al - 1))`, or the `al = 0`, `al = 1` formulas.
    pub fn stolarsky(&mut self, al: f64, a: f64, b: f64) -> f64 {
        if a == b {
            return a;
        }
        if al == 0.0 {
            return self.log_mean(a, b);
        }
        if al == 1.0 {
            return self.identric(a, b);
        }
        let (ba, bb, balpha) = (Self::big(a), Self::big(b), Self::big(al));
        let pa = self.pow(&ba, &balpha);
        let pb = self.pow(&bb, &balpha);
        let num = pb.sub(&pa, PREC, RM);
        let den = balpha.mul(&bb.sub(&ba, PREC, RM), PREC, RM);
        let q = num.div(&den, PREC, RM);
        let inv = Self::big(1.0).div(&Self::big(al).sub(&Self::big(1.0), PREC, RM), PREC, RM);
        let r = self.pow(&q, &inv);
        Self::to_f64(&r)
    }

    /// `(b - a) / (ln b - ln a)`.
    pub fn log_mean(&mut self, a: f64, b: f64) -> f64 {
        if a == b {
            return a;
        }
        let (ba, bb) = (Self::big(a), Self::big(b));
        let num = bb.sub(&ba, PREC, RM);
        let den = self.ln(&bb).sub(&self.ln(&ba), PREC, RM);
        Self::to_f64(&num.div(&den, PREC, RM))
    }

    /// `(1/e) exp((b ln b - a ln a) / (b - a))`.
    pub fn identric(&mut self, a: f64, b: f64) -> f64 {
        if a == b {
            return a;
        }
        let (ba, bb) = (Self::big(a), Self::big(b));
        let t = bb.mul(&self.ln(&bb), PREC, RM).sub(&ba.mul(&self.ln(&ba), PREC, RM), PREC, RM);
        let q = t.div(&bb.sub(&ba, PREC, RM), PREC, RM).sub(&Self::big(1.0), PREC, RM);
        Self::to_f64(&self.exp(&q))
    }

    /// `x^y` rounded to `f64`.
    pub fn powf(&mut self, x: f64, y: f64) -> f64 {
        let r = self.pow(&Self::big(x), &Self::big(y));
        Self::to_f64(&r)
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rel_err(x: f64, reference: f64) -> f64 {
    if reference == 0.0 {
        x.abs()
    } else {
        ((x - reference) / reference).abs()
    }
}

/// `n` points log-uniformly spaced on `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (n - 1) as f64).exp())
        .collect()
}
