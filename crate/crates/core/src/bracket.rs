//! Derivative-free bracketing bisection shared by the solvers.

/// Outcome of a bisection run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bisection {
    /// Final bracket, `lo <= hi`, with a sign change (or exact zero) inside.
    pub lo: f64,
    pub hi: f64,
    /// Midpoint of the final bracket, or the exact zero if one was hit.
    pub root: f64,
    pub steps: usize,
}

/// Bisects `f` on `[lo, hi]` until the bracket is no wider than `width_tol`,
/// `max_steps` is reached, or the bracket cannot shrink in floating point.
///
/// The caller guarantees `f(lo)` and `f(hi)` have opposite signs (or one of
/// them is zero); `f_lo` is `f(lo)`, passed in to avoid a re-evaluation.
pub fn bisect<E, F>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
    f_lo: f64,
    width_tol: f64,
    max_steps: usize,
) -> Result<Bisection, E>
where
    F: FnMut(f64) -> Result<f64, E>,
{
    if f_lo == 0.0 {
        return Ok(Bisection { lo, hi: lo, root: lo, steps: 0 });
    }
    let lo_negative = f_lo < 0.0;
    let mut steps = 0;
    while steps < max_steps && hi - lo > width_tol {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        steps += 1;
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(Bisection { lo: mid, hi: mid, root: mid, steps });
        }
        if (fm < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Bisection { lo, hi, root: lo + 0.5 * (hi - lo), steps })
}

/// Whether `fa` and `fb` bracket a root (opposite signs or an exact zero).
pub fn brackets(fa: f64, fb: f64) -> bool {
    fa == 0.0 || fb == 0.0 || (fa < 0.0) != (fb < 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::convert::Infallible;

    #[test]
    fn finds_sqrt2() {
        let f = |x: f64| Ok::<_, Infallible>(x * x - 2.0);
        let out = bisect(f, 0.0, 2.0, -2.0, 1e-14, 200).unwrap();
        assert!((out.root - 2f64.sqrt()).abs() < 1e-14);
        assert!(out.hi - out.lo <= 1e-14);
    }

    #[test]
    fn width_halves_every_step() {
        let f = |x: f64| Ok::<_, Infallible>(x - 0.3);
        for steps in 1..20 {
            let out = bisect(f, 0.0, 1.0, -0.3, 0.0, steps).unwrap();
            assert_eq!(out.steps, steps);
            assert_eq!(out.hi - out.lo, 0.5f64.powi(steps as i32));
        }
    }

    #[test]
    fn stops_when_bracket_is_unsplittable() {
        let f = |x: f64| Ok::<_, Infallible>(x - 1.0 / 3.0);
        let out = bisect(f, 0.0, 1.0, -1.0 / 3.0, 0.0, 10_000).unwrap();
        assert!(out.steps < 1100);
        assert!((out.root - 1.0 / 3.0).abs() <= f64::EPSILON);
    }

    #[test]
    fn exact_zero_short_circuits() {
        let f = |x: f64| Ok::<_, Infallible>(x - 0.5);
        let out = bisect(f, 0.0, 1.0, -0.5, 0.0, 100).unwrap();
        assert_eq!(out.root, 0.5);
        assert_eq!(out.steps, 1);
    }
}
