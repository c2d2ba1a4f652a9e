//! The solution families of the Stolarsky FDE and residuals for arbitrary `f`.
//!
//! ```text
//! f(x) = c1 x^alpha + c2 x + c3             alpha not in {0, 1}
//! f(x) = c1 x^alpha log x + c2 x + c3       alpha in {0, 1}
//! ```

use serde::Serialize;
use thiserror::Error;

use crate::expr::{DifferentiableFn, EvalError};
use crate::means::{stolarsky_mean, Alpha, Interval, MeanError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ResidualError {
    #[error(transparent)]
    Mean(#[from] MeanError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolutionFamily {
    pub alpha: Alpha,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl SolutionFamily {
    pub fn new(alpha: Alpha, c1: f64, c2: f64, c3: f64) -> Self {
        SolutionFamily { alpha, c1, c2, c3 }
    }

    pub fn is_log_form(&self) -> bool {
        self.alpha.is_log_family()
    }

    /// `f^(order)(x)` in closed form.
    pub fn eval(&self, x: f64, order: usize) -> Result<f64, EvalError> {
        if !(x > 0.0) {
            return Err(EvalError::Domain(format!("x must be positive, got {x}")));
        }
        let al = self.alpha.value();
        let core = match (self.is_log_form(), al == 0.0, order) {
            // log x
            (true, true, 0) => x.ln(),
            (true, true, 1) => 1.0 / x,
            (true, true, 2) => -1.0 / (x * x),
            (true, true, 3) => 2.0 / (x * x * x),
            // x log x
            (true, false, 0) => x * x.ln(),
            (true, false, 1) => x.ln() + 1.0,
            (true, false, 2) => 1.0 / x,
            (true, false, 3) => -1.0 / (x * x),
            (false, _, n @ 0..=3) => {
                let coeff: f64 = (0..n).map(|k| al - k as f64).product();
                if coeff == 0.0 {
                    0.0
                } else {
                    coeff * x.powf(al - n as f64)
                }
            }
            (_, _, n) => return Err(EvalError::Order(n)),
        };
        let affine = match order {
            0 => self.c2 * x + self.c3,
            1 => self.c2,
            _ => 0.0,
        };
        let v = self.c1 * core + affine;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(EvalError::Overflow(format!("f^({order})({x})")))
        }
    }
}

/// `family_eval`: closed-form `f^(order)(x)`.
pub fn family_eval(fam: &SolutionFamily, x: f64, order: usize) -> Result<f64, EvalError> {
    fam.eval(x, order)
}

/// `f(b) - f(a) - (b - a) f'(S_alpha(a, b))`, with `a <= b` after normalisation.
pub fn fde_residual(f: &DifferentiableFn, alpha: Alpha, iv: &Interval) -> Result<f64, ResidualError> {
    let (a, b) = (iv.a(), iv.b());
    let m = stolarsky_mean(alpha, iv)?;
    Ok(f.value(b)? - f.value(a)? - (b - a) * f.d1(m)?)
}

/// `1 + |f(a)| + |f(b)|`, the normaliser for FDE residuals.
pub fn fde_scale(f: &DifferentiableFn, iv: &Interval) -> Result<f64, EvalError> {
    Ok(1.0 + f.value(iv.a())?.abs() + f.value(iv.b())?.abs())
}

/// `f'''(t) - ((alpha - 2) / t) f''(t)`.
pub fn ode_residual(f: &DifferentiableFn, alpha: Alpha, t: f64) -> Result<f64, EvalError> {
    let al = alpha.value();
    Ok(f.d3(t)? - (al - 2.0) / t * f.d2(t)?)
}

/// Radical-inverse sequence in `base`, starting at index 1.
pub fn halton(index: u32, base: u32) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    let mut i = index;
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

pub const MEMBERSHIP_POINTS: u32 = 32;
pub const MEMBERSHIP_THRESHOLD: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Membership {
    pub max_abs_residual: f64,
    pub max_rel_residual: f64,
    /// `(a, b)` attaining the largest relative residual.
    pub witness: (f64, f64),
    pub pairs: usize,
    pub member: bool,
}

/// Aggregates FDE residuals over the endpoint pair `(lo, hi)` and a 32-point
/// Halton set (bases 2, 3) in `[lo, hi]^2`. `f` is reported as a member when
/// every relative residual is at most [`MEMBERSHIP_THRESHOLD`].
pub fn membership(f: &DifferentiableFn, alpha: Alpha, lo: f64, hi: f64) -> Result<Membership, ResidualError> {
    let mut pairs = vec![(lo, hi)];
    for i in 1..=MEMBERSHIP_POINTS {
        pairs.push((lo + (hi - lo) * halton(i, 2), lo + (hi - lo) * halton(i, 3)));
    }
    let mut out = Membership { max_abs_residual: 0.0, max_rel_residual: 0.0, witness: (lo, hi), pairs: 0, member: true };
    for (a, b) in pairs {
        if a == b {
            continue;
        }
        let iv = Interval::new(a, b)?;
        let res = fde_residual(f, alpha, &iv)?.abs();
        let rel = res / fde_scale(f, &iv)?;
        out.pairs += 1;
        out.max_abs_residual = out.max_abs_residual.max(res);
        if rel > out.max_rel_residual {
            out.max_rel_residual = rel;
            out.witness = (a, b);
        }
    }
    out.member = out.max_rel_residual <= MEMBERSHIP_THRESHOLD;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(al: f64, c: (f64, f64, f64)) -> SolutionFamily {
        SolutionFamily::new(Alpha::new(al).unwrap(), c.0, c.1, c.2)
    }

    fn iv(a: f64, b: f64) -> Interval {
        Interval::new(a, b).unwrap()
    }

    #[test]
    fn closed_forms() {
        assert_eq!(fam(2.0, (1.0, 0.0, 0.0)).eval(3.0, 1).unwrap(), 6.0);
        assert!((fam(0.0, (1.0, 0.0, 0.0)).eval(std::f64::consts::E, 0).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(fam(-1.0, (1.0, 1.0, 1.0)).eval(2.0, 0).unwrap(), 3.5);
        assert_eq!(fam(1.0, (1.0, 0.0, 0.0)).eval(1.0, 1).unwrap(), 1.0);
        assert_eq!(fam(2.0, (1.0, 0.0, 0.0)).eval(3.0, 3).unwrap(), 0.0);
        assert!(fam(2.0, (1.0, 0.0, 0.0)).eval(0.0, 0).is_err());
        assert!(matches!(fam(2.0, (1.0, 0.0, 0.0)).eval(1.0, 4), Err(EvalError::Order(4))));
    }

    #[test]
    fn fde_examples() {
        let sq = DifferentiableFn::parse("x^2").unwrap();
        let two = Alpha::new(2.0).unwrap();
        assert!(fde_residual(&sq, two, &iv(0.3, 7.0)).unwrap().abs() < 1e-12 * 50.0);
        let cube = DifferentiableFn::parse("x^3").unwrap();
        assert!((fde_residual(&cube, two, &iv(1.0, 2.0)).unwrap() - 0.25).abs() < 1e-14);
        for al in [-2.0, 0.0, 0.5, 1.0, 3.0] {
            let f = DifferentiableFn::from(fam(al, (1.7, -2.0, 4.0)));
            let i = iv(0.4, 6.5);
            let r = fde_residual(&f, Alpha::new(al).unwrap(), &i).unwrap();
            assert!(r.abs() <= 1e-12 * fde_scale(&f, &i).unwrap(), "{al}: {r}");
        }
    }

    #[test]
    fn ode_examples() {
        let three = Alpha::new(3.0).unwrap();
        let f = DifferentiableFn::from(fam(3.0, (1.0, 1.0, 1.0)));
        assert!(ode_residual(&f, three, 2.5).unwrap().abs() < 1e-12);
        let one = Alpha::new(1.0).unwrap();
        let g = DifferentiableFn::from(fam(1.0, (1.0, 0.0, 0.0)));
        assert!(ode_residual(&g, one, 0.7).unwrap().abs() < 1e-12);
        let cube = DifferentiableFn::parse("x^3").unwrap();
        assert_eq!(ode_residual(&cube, Alpha::new(2.0).unwrap(), 1.0).unwrap(), 6.0);
    }

    #[test]
    fn halton_prefix() {
        let h: Vec<f64> = (1..=4).map(|i| halton(i, 2)).collect();
        assert_eq!(h, vec![0.5, 0.25, 0.75, 0.125]);
        assert!((halton(2, 3) - 2.0 / 3.0).abs() < 1e-16);
    }

    #[test]
    fn membership_separates() {
        let f = DifferentiableFn::from(fam(-1.0, (2.0, 1.0, 0.0)));
        let m = membership(&f, Alpha::new(-1.0).unwrap(), 0.5, 5.0).unwrap();
        assert!(m.member, "{m:?}");
        assert_eq!(m.pairs, 33);
        let cube = DifferentiableFn::parse("x^3").unwrap();
        let m = membership(&cube, Alpha::new(2.0).unwrap(), 1.0, 2.0).unwrap();
        assert!(!m.member);
        assert!(m.max_abs_residual > 0.1);
    }
}
