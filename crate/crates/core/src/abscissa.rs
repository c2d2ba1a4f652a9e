//! Lagrange mean-value abscissas: all `c` in `(a, b)` with
//! `f'(c) = (f(b) - f(a)) / (b - a)`.
//!
//! A uniform grid is scanned for sign changes of `f'(x) - slope`; each one is
//! bisected to width `tol (b - a)` and then re-checked against the residual
//! bound `|f'(c) - slope| <= tol (1 + |slope|)`. Sign changes through poles
//! fail the re-check and are dropped.

use serde::Serialize;
use thiserror::Error;

use crate::bracket::bisect;
use crate::expr::{DifferentiableFn, EvalError};
use crate::means::{stolarsky_mean, Alpha, Interval, MeanError};

pub const DEFAULT_GRID: usize = 256;
pub const DEFAULT_TOL: f64 = 1e-10;
/// Share of grid points within tolerance above which `f'` is treated as constant.
pub const DEGENERATE_SHARE: f64 = 0.9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AbscissaError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("no mean-value abscissa found on ({a}, {b}) at grid resolution {grid_n}")]
    NoRootFound { a: f64, b: f64, grid_n: usize },
    #[error("f' equals the secant slope {slope} across the interval; every point is an abscissa")]
    Degenerate { slope: f64 },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Mean(#[from] MeanError),
}

/// `(f(b) - f(a)) / (b - a)`.
pub fn secant_slope(f: &DifferentiableFn, iv: &Interval) -> Result<f64, EvalError> {
    Ok((f.value(iv.b())? - f.value(iv.a())?) / iv.width())
}

fn check_args(iv: &Interval, grid_n: usize, tol: f64) -> Result<(), AbscissaError> {
    if iv.is_degenerate() {
        return Err(AbscissaError::Invalid(format!("need a < b, got a = b = {}", iv.a())));
    }
    if grid_n < 8 {
        return Err(AbscissaError::Invalid(format!("grid must have at least 8 cells, got {grid_n}")));
    }
    if !(tol > 0.0) {
        return Err(AbscissaError::Invalid(format!("tolerance must be positive, got {tol}")));
    }
    Ok(())
}

/// Sorted, deduplicated abscissas in `(a, b)`.
pub fn mean_value_abscissas(
    f: &DifferentiableFn,
    iv: &Interval,
    grid_n: usize,
    tol: f64,
) -> Result<Vec<f64>, AbscissaError> {
    check_args(iv, grid_n, tol)?;
    let slope = secant_slope(f, iv)?;
    scan(f, iv, slope, grid_n, tol)
}

fn scan(f: &DifferentiableFn, iv: &Interval, slope: f64, grid_n: usize, tol: f64) -> Result<Vec<f64>, AbscissaError> {
    let (a, b) = (iv.a(), iv.b());
    let bound = tol * (1.0 + slope.abs());
    let g = |x: f64| f.d1(x).map(|d| d - slope);
    let xs: Vec<f64> = (0..=grid_n)
        .map(|i| if i == grid_n { b } else { a + (b - a) * i as f64 / grid_n as f64 })
        .collect();
    let gs = xs.iter().map(|&x| g(x)).collect::<Result<Vec<_>, _>>()?;

    let flat = gs.iter().filter(|v| v.abs() <= bound).count();
    if flat as f64 >= DEGENERATE_SHARE * xs.len() as f64 {
        return Err(AbscissaError::Degenerate { slope });
    }

    let mut roots = Vec::new();
    let sign_change = |i: usize| i < grid_n && gs[i] != 0.0 && gs[i + 1] != 0.0 && (gs[i] < 0.0) != (gs[i + 1] < 0.0);
    for i in 0..grid_n {
        if sign_change(i) {
            // a cell whose refinement hits a singularity holds no root
            if let Ok(Some(c)) = refine(&g, xs[i], xs[i + 1], gs[i], tol * (b - a), bound) {
                roots.push(c);
            }
        }
    }
    // exact zeros and tangential touches at interior nodes
    for i in 1..grid_n {
        let v = gs[i].abs();
        let touching = v == 0.0
            || (v <= bound && v <= gs[i - 1].abs() && v <= gs[i + 1].abs() && !sign_change(i - 1) && !sign_change(i));
        if touching {
            roots.push(xs[i]);
        }
    }

    roots.retain(|&c| c > a && c < b);
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|later, kept| *later - *kept <= 10.0 * tol);
    if roots.is_empty() {
        return Err(AbscissaError::NoRootFound { a, b, grid_n });
    }
    Ok(roots)
}

fn refine(
    g: &impl Fn(f64) -> Result<f64, EvalError>,
    lo: f64,
    hi: f64,
    g_lo: f64,
    width: f64,
    bound: f64,
) -> Result<Option<f64>, EvalError> {
    let mut r = bisect(g, lo, hi, g_lo, width, 200)?;
    if g(r.root)?.abs() > bound {
        r = bisect(g, r.lo, r.hi, g(r.lo)?, 0.0, 200)?;
    }
    Ok((g(r.root)?.abs() <= bound).then_some(r.root))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AbscissaReport {
    pub mean: f64,
    pub slope: f64,
    pub abscissas: Vec<f64>,
    /// Distance from `S_alpha(a, b)` to the nearest abscissa; zero when degenerate.
    pub min_distance: f64,
    pub matches: bool,
    pub degenerate: bool,
}

/// Abscissas of `f` on `iv` compared with `S_alpha(a, b)`.
pub fn abscissa_report(
    f: &DifferentiableFn,
    alpha: Alpha,
    iv: &Interval,
    grid_n: usize,
    tol: f64,
) -> Result<AbscissaReport, AbscissaError> {
    check_args(iv, grid_n, tol)?;
    let mean = stolarsky_mean(alpha, iv)?;
    let slope = secant_slope(f, iv)?;
    match scan(f, iv, slope, grid_n, tol) {
        Ok(abscissas) => {
            let min_distance = abscissas.iter().map(|c| (c - mean).abs()).fold(f64::INFINITY, f64::min);
            let matches = min_distance <= 10.0 * tol * iv.width();
            Ok(AbscissaReport { mean, slope, abscissas, min_distance, matches, degenerate: false })
        }
        Err(AbscissaError::Degenerate { .. }) => {
            Ok(AbscissaReport { mean, slope, abscissas: Vec::new(), min_distance: 0.0, matches: true, degenerate: true })
        }
        Err(e) => Err(e),
    }
}
