//! Convergence-order estimates, Richardson extrapolation and finite differences.

use serde::Serialize;

/// `log2(|e_k| / |e_{k+1}|)` for consecutive errors from a halving step.
/// Entries are NaN where either error is zero.
pub fn observed_orders(errors: &[f64]) -> Vec<f64> {
    errors
        .windows(2)
        .map(|w| {
            let (e0, e1) = (w[0].abs(), w[1].abs());
            if e0 == 0.0 || e1 == 0.0 {
                f64::NAN
            } else {
                (e0 / e1).log2()
            }
        })
        .collect()
}

/// Repeated Richardson extrapolation of a sequence taken at steps
/// `h, h/2, h/4, ...`, assuming an error expansion in `h^p0, h^(p0+1), ...`.
/// Returns the last diagonal entry of the tableau.
pub fn richardson(values: &[f64], p0: u32) -> f64 {
    let mut row: Vec<f64> = values.to_vec();
    let mut p = p0;
    while row.len() > 1 {
        let f = 2f64.powi(p as i32);
        row = row.windows(2).map(|w| w[1] + (w[1] - w[0]) / (f - 1.0)).collect();
        p += 1;
    }
    row.first().copied().unwrap_or(f64::NAN)
}

/// Median of the finite entries; NaN when there are none.
pub fn median(xs: &[f64]) -> f64 {
    let mut v: Vec<f64> = xs.iter().copied().filter(|x| x.is_finite()).collect();
    if v.is_empty() {
        return f64::NAN;
    }
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// `(g(x + h) - g(x - h)) / (2h)`.
pub fn central_difference<E>(mut g: impl FnMut(f64) -> Result<f64, E>, x: f64, h: f64) -> Result<f64, E> {
    Ok((g(x + h)? - g(x - h)?) / (2.0 * h))
}

/// Default step for validating a derivative at `x`.
pub fn default_step(x: f64) -> f64 {
    1e-5_f64.max(1e-5 * x.abs())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FdCheck {
    pub x: f64,
    pub exact: f64,
    pub steps: Vec<f64>,
    pub errors: Vec<f64>,
    pub orders: Vec<f64>,
    /// Median order over consecutive pairs still above roundoff.
    pub order: f64,
    /// Smallest error relative to `1 + |exact|`.
    pub best_rel_error: f64,
}

impl FdCheck {
    /// Second-order agreement: either a clean order estimate above
    /// `min_order`, or agreement already at roundoff.
    pub fn passes(&self, min_order: f64, rel_tol: f64) -> bool {
        self.order >= min_order || self.best_rel_error <= rel_tol
    }
}

/// Compares `exact` against central differences of `g` at steps
/// `h0, h0/2, ...` (`levels` of them).
pub fn fd_check<E>(
    mut g: impl FnMut(f64) -> Result<f64, E>,
    exact: f64,
    x: f64,
    h0: f64,
    levels: usize,
) -> Result<FdCheck, E> {
    let mut steps = Vec::with_capacity(levels);
    let mut errors = Vec::with_capacity(levels);
    let mut h = h0;
    for _ in 0..levels {
        let d = central_difference(&mut g, x, h)?;
        steps.push(h);
        errors.push(d - exact);
        h /= 2.0;
    }
    let orders = observed_orders(&errors);
    // ignore pairs whose smaller error is already near roundoff
    let noise = 1e-9 * (1.0 + exact.abs());
    let clean: Vec<f64> = orders
        .iter()
        .zip(errors.windows(2))
        .filter(|(o, w)| o.is_finite() && w[1].abs() > noise)
        .map(|(o, _)| *o)
        .collect();
    let order = median(&clean);
    let best_rel_error = errors.iter().map(|e| e.abs()).fold(f64::INFINITY, f64::min) / (1.0 + exact.abs());
    Ok(FdCheck { x, exact, steps, errors, orders, order, best_rel_error })
}
