//! Numerical checks of the constructions behind the characterisation proof.
//!
//! Two implicit functions appear. With `alpha` outside `{0, 1}`:
//!
//! ```text
//! psi(x, y) = (y + h0)^alpha - y^alpha - alpha h0 x^(alpha-1),   psi(x, phi(x)) = 0
//! Psi(h, y) = (y + h)^alpha  - y^alpha - alpha h x0^(alpha-1),   Psi(h, g(h))   = 0
//! ```
//!
//! For `x0 = S_alpha(t, t + r)` the second has `g(r) = t`. Writing
//!
//! ```text
//! Q   = ((r + t)^alpha - t^alpha) / (alpha r)
//! phi = Q - t^(alpha-1)          psi = Q - (r + t)^(alpha-1)
//! D   = (r + t)^(alpha-1) - t^(alpha-1)
//! W   = (alpha - 1) ((r + t)^(alpha-2) phi - t^(alpha-2) psi)
//! ```
//!
//! the quantities
//!
//! ```text
//! R = (f''(r + t) phi^2 - f''(t) psi^2) / r^3
//! S = alpha ((alpha - 1) t^(alpha-2) psi + D phi / r) / r^2
//! T = W / r^3 - D^2 / r^4
//! ```
//!
//! satisfy, for every solution `f` and every `r > 0`,
//!
//! ```text
//! (f'(r + t) - f'(t)) / (alpha r) = R / S - (f'(x0) - f'(t)) T / S
//! ```
//!
//! and tend to `R0`, `S0`, `T0` (see [`rst_leading`]) as `r -> 0`, which turns
//! the identity into `f''' = (alpha - 2) f'' / t`. `phi`, `psi`, `D`, `W`
//! cancel to `O(r)` or worse, so they are formed in double-double arithmetic.

use std::convert::Infallible;

use serde::Serialize;
use thiserror::Error;

use crate::bracket::{bisect, brackets};
use crate::convergence::{fd_check, median, observed_orders, richardson, FdCheck};
use crate::dd::Dd;
use crate::expr::{DifferentiableFn, EvalError};
use crate::means::{stolarsky_mean, Alpha, Interval, MeanError};

/// Upper end of the implicit-solver window, as a multiple of the seed.
pub const SOLVER_WINDOW: f64 = 64.0;
/// Lower end of the implicit-solver window, as a multiple of the seed.
const SOLVER_FLOOR: f64 = 1e-12;
const SOLVER_STEPS: usize = 200;
pub const DEFAULT_KMAX: usize = 16;
pub const MAX_KMAX: usize = 40;
pub const FIRST_K: usize = 4;
/// A precision floor reached before this `k` is an error.
pub const MIN_FLOOR_K: usize = 10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProofError {
    #[error("alpha = {alpha} is outside this check: {reason}")]
    Branch { alpha: f64, reason: String },
    #[error("no sign change of the implicit equation on ({lo:e}, {hi:e}]")]
    NotBracketed { lo: f64, hi: f64 },
    #[error("denominator {value:e} is too close to zero")]
    DegenerateDenominator { value: f64 },
    #[error("roundoff dominates from k = {best_k} on (requested kmax = {kmax})")]
    PrecisionFloor { best_k: usize, kmax: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Mean(#[from] MeanError),
}

fn generic(alpha: Alpha) -> Result<f64, ProofError> {
    let al = alpha.value();
    if alpha.is_log_family() {
        return Err(ProofError::Branch {
            alpha: al,
            reason: "the implicit-function construction needs alpha outside {0, 1}".into(),
        });
    }
    Ok(al)
}

fn positive(name: &str, v: f64) -> Result<(), ProofError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(ProofError::Invalid(format!("{name} must be positive and finite, got {v}")))
    }
}

fn nonzero_den(v: f64) -> Result<f64, ProofError> {
    if v.abs() < 1e-300 || !v.is_finite() {
        Err(ProofError::DegenerateDenominator { value: v })
    } else {
        Ok(v)
    }
}

/// Root of a function monotone in `y` on `(SOLVER_FLOOR seed, SOLVER_WINDOW seed]`.
fn solve_window(fun: impl Fn(f64) -> f64, seed: f64) -> Result<f64, ProofError> {
    let (lo, hi) = (SOLVER_FLOOR * seed, SOLVER_WINDOW * seed);
    let (flo, fhi) = (fun(lo), fun(hi));
    if !(flo.is_finite() && fhi.is_finite()) || !brackets(flo, fhi) {
        return Err(ProofError::NotBracketed { lo, hi });
    }
    let out = bisect(|y| Ok::<_, Infallible>(fun(y)), lo, hi, flo, 0.0, SOLVER_STEPS).unwrap_or_else(|e| match e {});
    Ok(out.root)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LemmaSetup {
    pub alpha: f64,
    pub x0: f64,
    pub h0: f64,
    pub y0: f64,
}

impl LemmaSetup {
    pub fn psi(&self, x: f64, y: f64) -> f64 {
        let al = self.alpha;
        (y + self.h0).powf(al) - y.powf(al) - al * self.h0 * x.powf(al - 1.0)
    }

    /// Sum of the magnitudes of the three terms of `psi`.
    pub fn psi_scale(&self, x: f64, y: f64) -> f64 {
        let al = self.alpha;
        (y + self.h0).powf(al).abs() + y.powf(al).abs() + (al * self.h0 * x.powf(al - 1.0)).abs()
    }

    /// `|psi(x0, y0)|` relative to its scale.
    pub fn seed_residual(&self) -> f64 {
        self.psi(self.x0, self.y0).abs() / self.psi_scale(self.x0, self.y0)
    }
}

/// `y0 = h0 = ((2^alpha - 1) / alpha)^(1 / (1 - alpha)) x0`, which puts
/// `(x0, y0)` on the zero set of `psi`.
pub fn lemma_seed(alpha: Alpha, x0: f64) -> Result<LemmaSetup, ProofError> {
    let al = generic(alpha)?;
    positive("x0", x0)?;
    let h0 = ((2f64.powf(al) - 1.0) / al).powf(1.0 / (1.0 - al)) * x0;
    Ok(LemmaSetup { alpha: al, x0, h0, y0: h0 })
}

/// `phi(x)` with `psi(x, phi(x)) = 0`.
pub fn solve_phi(setup: &LemmaSetup, x: f64) -> Result<f64, ProofError> {
    positive("x", x)?;
    if x == setup.x0 {
        return Ok(setup.y0);
    }
    solve_window(|y| setup.psi(x, y), setup.y0)
}

/// `phi'(x) = (alpha - 1) h0 x^(alpha-2) / ((phi + h0)^(alpha-1) - phi^(alpha-1))`.
pub fn phi_derivative(setup: &LemmaSetup, x: f64, phi_x: f64) -> Result<f64, ProofError> {
    let al = setup.alpha;
    let den = nonzero_den((phi_x + setup.h0).powf(al - 1.0) - phi_x.powf(al - 1.0))?;
    Ok((al - 1.0) * setup.h0 * x.powf(al - 2.0) / den)
}

/// `Psi(h, y) = (y + h)^alpha - y^alpha - alpha h x0^(alpha-1)`.
pub fn big_psi(alpha: f64, x0: f64, h: f64, y: f64) -> f64 {
    (y + h).powf(alpha) - y.powf(alpha) - alpha * h * x0.powf(alpha - 1.0)
}

fn big_psi_scale(alpha: f64, x0: f64, h: f64, y: f64) -> f64 {
    (y + h).powf(alpha).abs() + y.powf(alpha).abs() + (alpha * h * x0.powf(alpha - 1.0)).abs()
}

/// `|Psi(h, y)|` relative to the magnitudes of its terms.
pub fn big_psi_residual(alpha: f64, x0: f64, h: f64, y: f64) -> f64 {
    big_psi(alpha, x0, h, y).abs() / big_psi_scale(alpha, x0, h, y)
}

/// `g(h)` with `Psi(h, g(h)) = 0`, where `x0 = S_alpha(t, t + r)` so that `g(r) = t`.
pub fn solve_g(alpha: Alpha, x0: f64, r: f64, t: f64, h: f64) -> Result<f64, ProofError> {
    let al = generic(alpha)?;
    for (n, v) in [("x0", x0), ("r", r), ("t", t), ("h", h)] {
        positive(n, v)?;
    }
    if h == r {
        return Ok(t);
    }
    solve_window(|y| big_psi(al, x0, h, y), t)
}

/// `g'(h) = ((g + h)^alpha - g^alpha - alpha h (g + h)^(alpha-1)) / (alpha h ((g + h)^(alpha-1) - g^(alpha-1)))`.
pub fn g_derivative(alpha: Alpha, h: f64, g_h: f64) -> Result<f64, ProofError> {
    let al = generic(alpha)?;
    let s = g_h + h;
    let den = nonzero_den(s.powf(al - 1.0) - g_h.powf(al - 1.0))?;
    Ok((s.powf(al) - g_h.powf(al) - al * h * s.powf(al - 1.0)) / (al * h * den))
}

/// `-(dPsi/dh) / (dPsi/dy)` at `(h, g_h)`: implicit differentiation without
/// substituting the curve equation.
pub fn g_derivative_implicit(alpha: Alpha, x0: f64, h: f64, g_h: f64) -> Result<f64, ProofError> {
    let al = generic(alpha)?;
    let s = g_h + h;
    let dh = al * (s.powf(al - 1.0) - x0.powf(al - 1.0));
    let dy = nonzero_den(al * (s.powf(al - 1.0) - g_h.powf(al - 1.0)))?;
    Ok(-dh / dy)
}

fn pw(x: Dd, p: f64) -> Dd {
    if p == 0.0 {
        Dd::ONE
    } else if p.fract() == 0.0 && p.abs() <= 64.0 {
        x.powi(p as i32)
    } else {
        x.powf(Dd::new(p))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RstPoint {
    pub r: f64,
    pub t: f64,
    pub phi: f64,
    pub psi: f64,
    #[serde(rename = "R")]
    pub big_r: f64,
    #[serde(rename = "S")]
    pub big_s: f64,
    #[serde(rename = "T")]
    pub big_t: f64,
    pub x0: f64,
    /// `(r + t)^(alpha-1) - t^(alpha-1)`.
    pub d: f64,
    /// `phi + psi` from the shared quotient, `2Q - t^(alpha-1) - (r + t)^(alpha-1)`.
    pub phi_plus_psi: f64,
}

impl RstPoint {
    /// `g'(r) = psi / D` at the base point `g(r) = t`.
    pub fn g_prime(&self) -> f64 {
        self.psi / self.d
    }
}

/// `R`, `S`, `T`, `phi`, `psi` and `x0 = Q^(1/(alpha-1))` at `(r, t)`.
pub fn rst_terms(alpha: Alpha, f: &DifferentiableFn, r: f64, t: f64) -> Result<RstPoint, ProofError> {
    let al = generic(alpha)?;
    positive("r", r)?;
    positive("t", t)?;
    let (rd, td, st) = (Dd::new(r), Dd::new(t), Dd::sum(r, t));
    let q = (pw(st, al) - pw(td, al)) / (Dd::new(al) * rd);
    let (s1, t1) = (pw(st, al - 1.0), pw(td, al - 1.0));
    let (s2, t2) = (pw(st, al - 2.0), pw(td, al - 2.0));
    let phi = q - t1;
    let psi = q - s1;
    let d = s1 - t1;
    let am1 = Dd::new(al - 1.0);
    let w = am1 * (s2 * phi - t2 * psi);
    let r2 = rd.sqr();
    let r3 = r2 * rd;
    let big_s = Dd::new(al) * (am1 * t2 * psi + d * phi / rd) / r2;
    let big_t = w / r3 - d.sqr() / (r3 * rd);
    let f2s = Dd::new(f.d2(st.to_f64())?);
    let f2t = Dd::new(f.d2(t)?);
    let big_r = (f2s * phi.sqr() - f2t * psi.sqr()) / r3;
    let x0 = pw(q, 1.0 / (al - 1.0)).to_f64();
    Ok(RstPoint {
        r,
        t,
        phi: phi.to_f64(),
        psi: psi.to_f64(),
        big_r: big_r.to_f64(),
        big_s: big_s.to_f64(),
        big_t: big_t.to_f64(),
        x0,
        d: d.to_f64(),
        phi_plus_psi: (q + q - t1 - s1).to_f64(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Leading {
    #[serde(rename = "R0")]
    pub r0: f64,
    #[serde(rename = "S0")]
    pub s0: f64,
    #[serde(rename = "T0")]
    pub t0: f64,
}

/// Leading terms of `R`, `S`, `T` as `r -> 0`:
///
/// ```text
/// R0 = (alpha-1)^2/4 t^(2alpha-4) f'''(t) - (alpha-1)^2 (alpha-2)/6 t^(2alpha-5) f''(t)
/// S0 = alpha (alpha-1)^2 (alpha-2)/12 t^(2alpha-5)
/// T0 = -(alpha-1)^2 (alpha-2)/12 t^(2alpha-6)
/// ```
pub fn rst_leading(alpha: Alpha, f: &DifferentiableFn, t: f64) -> Result<Leading, ProofError> {
    let al = generic(alpha)?;
    positive("t", t)?;
    let a1 = (al - 1.0) * (al - 1.0);
    let r0 = a1 / 4.0 * t.powf(2.0 * al - 4.0) * f.d3(t)? - a1 * (al - 2.0) / 6.0 * t.powf(2.0 * al - 5.0) * f.d2(t)?;
    let s0 = al * a1 * (al - 2.0) / 12.0 * t.powf(2.0 * al - 5.0);
    let t0 = -a1 * (al - 2.0) / 12.0 * t.powf(2.0 * al - 6.0);
    Ok(Leading { r0, s0, t0 })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub k: usize,
    pub r: f64,
    #[serde(flatten)]
    pub point: RstPoint,
    pub d_r: f64,
    pub d_s: f64,
    pub d_t: f64,
    pub t_over_s: f64,
    pub x0_minus_t: f64,
    /// `(f'(r + t) - f'(t)) / (alpha r)`.
    pub lhs: f64,
    /// `R/S - (f'(x0) - f'(t)) T/S`.
    pub rhs: f64,
    pub identity_residual: f64,
    /// `f'(r + t)(1 + g') - f'(t) g' - f'(x0)`, relative.
    pub chain_residual: f64,
    /// `alpha (alpha - 2) / (3t) (rhs - f''(t)/alpha)`, which tends to the ODE residual.
    pub ode_estimate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub alpha: f64,
    pub t: f64,
    pub kmax: usize,
    pub leading: Leading,
    /// `T0 / S0 = -1 / (alpha t)`.
    pub t_over_s_limit: f64,
    pub rows: Vec<ConvergenceRow>,
    pub orders_r: Vec<f64>,
    pub orders_s: Vec<f64>,
    pub orders_t: Vec<f64>,
    /// Median observed orders before the floor; NaN when the difference
    /// vanishes identically.
    pub order_r: f64,
    pub order_s: f64,
    pub order_t: f64,
    /// Last `k` up to which every non-negligible difference kept shrinking.
    pub floor_k: usize,
    pub differences_decreasing: bool,
    pub x0_decreasing: bool,
    /// `max |x0 - t| / (t r)` over the table.
    pub x0_constant: f64,
    pub identity_max_residual: f64,
    pub chain_max_residual: f64,
    /// Richardson limit of `ode_estimate` over the last rows before the floor.
    pub ode_limit: f64,
    /// `f'''(t) - (alpha - 2) f''(t) / t` evaluated directly.
    pub ode_direct: f64,
}

/// First index `i` with `|e[i+1]| > |e[i]|` among errors above `noise`,
/// or `e.len() - 1` if the sequence never turns.
fn turning_index(errors: &[f64], noise: f64) -> usize {
    for i in 0..errors.len().saturating_sub(1) {
        let (a, b) = (errors[i].abs(), errors[i + 1].abs());
        if b > noise && b > a {
            return i;
        }
    }
    errors.len().saturating_sub(1)
}

fn rel(x: f64, scale: f64) -> f64 {
    x.abs() / (1.0 + scale.abs())
}

/// Tabulates the `r_k = 2^-k` sequence for `k = 4..=kmax`.
pub fn asymptotic_convergence(
    alpha: Alpha,
    f: &DifferentiableFn,
    t: f64,
    kmax: usize,
) -> Result<ConvergenceReport, ProofError> {
    let al = generic(alpha)?;
    if al == 2.0 {
        return Err(ProofError::Branch {
            alpha: al,
            reason: "S0 and T0 vanish at alpha = 2, so the limit R/S is 0/0 at leading order".into(),
        });
    }
    positive("t", t)?;
    if !(FIRST_K + 2..=MAX_KMAX).contains(&kmax) {
        return Err(ProofError::Invalid(format!("kmax must lie in {}..={MAX_KMAX}, got {kmax}", FIRST_K + 2)));
    }
    let lead = rst_leading(alpha, f, t)?;
    let (f1t, f2t) = (f.d1(t)?, f.d2(t)?);
    let mut rows = Vec::new();
    for k in FIRST_K..=kmax {
        let r = 0.5f64.powi(k as i32);
        let p = rst_terms(alpha, f, r, t)?;
        let f1s = f.d1(r + t)?;
        let f1x = f.d1(p.x0)?;
        let lhs = (f1s - f1t) / (al * r);
        let ff = f1x - f1t;
        let rhs = p.big_r / p.big_s - ff * p.big_t / p.big_s;
        let gp = p.g_prime();
        let chain = f1s * (1.0 + gp) - f1t * gp - f1x;
        rows.push(ConvergenceRow {
            k,
            r,
            point: p,
            d_r: p.big_r - lead.r0,
            d_s: p.big_s - lead.s0,
            d_t: p.big_t - lead.t0,
            t_over_s: p.big_t / p.big_s,
            x0_minus_t: p.x0 - t,
            lhs,
            rhs,
            identity_residual: rel(lhs - rhs, lhs),
            chain_residual: rel(chain, f1x),
            ode_estimate: al * (al - 2.0) / (3.0 * t) * (rhs - f2t / al),
        });
    }

    let col = |sel: fn(&ConvergenceRow) -> f64| rows.iter().map(sel).collect::<Vec<f64>>();
    let (dr, ds, dt) = (col(|w| w.d_r), col(|w| w.d_s), col(|w| w.d_t));
    let turn = [
        turning_index(&dr, 1e-12 * (1.0 + lead.r0.abs())),
        turning_index(&ds, 1e-12 * (1.0 + lead.s0.abs())),
        turning_index(&dt, 1e-12 * (1.0 + lead.t0.abs())),
    ]
    .into_iter()
    .min()
    .unwrap_or(0);
    let floor_k = FIRST_K + turn;
    let usable = &rows[..=turn];
    let orders_r = observed_orders(&dr);
    let orders_s = observed_orders(&ds);
    let orders_t = observed_orders(&dt);
    let clean = |o: &[f64]| median(&o[..turn.min(o.len())]);

    let x0d = col(|w| w.x0_minus_t.abs());
    let x0_decreasing = x0d.windows(2).all(|w| w[1] < w[0]);
    let x0_constant = rows.iter().map(|w| w.x0_minus_t.abs() / (t * w.r)).fold(0.0, f64::max);
    let identity_max_residual = usable.iter().map(|w| w.identity_residual).fold(0.0, f64::max);
    let chain_max_residual = usable.iter().map(|w| w.chain_residual).fold(0.0, f64::max);
    let tail: Vec<f64> = usable.iter().rev().take(5).rev().map(|w| w.ode_estimate).collect();
    let ode_limit = richardson(&tail, 1);

    let report = ConvergenceReport {
        alpha: al,
        t,
        kmax,
        leading: lead,
        t_over_s_limit: -1.0 / (al * t),
        order_r: clean(&orders_r),
        order_s: clean(&orders_s),
        order_t: clean(&orders_t),
        orders_r,
        orders_s,
        orders_t,
        floor_k,
        differences_decreasing: floor_k == kmax,
        x0_decreasing,
        x0_constant,
        identity_max_residual,
        chain_max_residual,
        ode_limit,
        ode_direct: f.d3(t)? - (al - 2.0) / t * f2t,
        rows,
    };
    if floor_k < MIN_FLOOR_K.min(kmax) {
        return Err(ProofError::PrecisionFloor { best_k: floor_k, kmax });
    }
    Ok(report)
}

/// Step halvings used by the finite-difference checks.
pub const FD_LEVELS: usize = 5;

/// Central differences of [`solve_phi`] against [`phi_derivative`] at `x`.
pub fn phi_fd_check(setup: &LemmaSetup, x: f64) -> Result<FdCheck, ProofError> {
    let px = solve_phi(setup, x)?;
    let exact = phi_derivative(setup, x, px)?;
    fd_check(|y| solve_phi(setup, y), exact, x, x / 16.0, FD_LEVELS)
}

/// Central differences of [`solve_g`] against [`g_derivative`] at `h`.
pub fn g_fd_check(alpha: Alpha, x0: f64, r: f64, t: f64, h: f64) -> Result<FdCheck, ProofError> {
    let gh = solve_g(alpha, x0, r, t, h)?;
    let exact = g_derivative(alpha, h, gh)?;
    fd_check(|v| solve_g(alpha, x0, r, t, v), exact, h, h / 16.0, FD_LEVELS)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolverCheck {
    pub at: f64,
    pub value: f64,
    pub residual: f64,
    pub derivative: f64,
    pub fd: FdCheck,
    /// Relative gap to implicit differentiation of `Psi`; `g` checks only.
    pub implicit_gap: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Thresholds {
    pub seed_residual: f64,
    pub solver_residual: f64,
    pub fd_min_order: f64,
    pub fd_roundoff: f64,
    pub implicit_gap: f64,
    pub identity: f64,
    pub ode_limit: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            seed_residual: 1e-12,
            solver_residual: 1e-12,
            fd_min_order: 1.8,
            fd_roundoff: 1e-10,
            implicit_gap: 1e-10,
            identity: 1e-7,
            ode_limit: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProofcheckSummary {
    pub lemma: LemmaSetup,
    pub seed_residual: f64,
    pub phi_checks: Vec<SolverCheck>,
    /// `r` and `x0 = S_alpha(t, t + r)` for the `g` checks.
    pub g_base: (f64, f64),
    pub g_checks: Vec<SolverCheck>,
    pub convergence: ConvergenceReport,
    pub thresholds: Thresholds,
    pub violations: Vec<String>,
}

impl ProofcheckSummary {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

const PROBE: [f64; 4] = [0.9, 0.95, 1.05, 1.1];
const G_BASE_R: f64 = 0.25;

/// Lemma seed, both implicit solvers with finite-difference checks, and the
/// convergence table, measured against `th`.
pub fn run_proofcheck(
    alpha: Alpha,
    f: &DifferentiableFn,
    t: f64,
    kmax: usize,
    th: &Thresholds,
) -> Result<ProofcheckSummary, ProofError> {
    let convergence = asymptotic_convergence(alpha, f, t, kmax)?;
    let lemma = lemma_seed(alpha, t)?;
    let seed_residual = lemma.seed_residual();
    let mut violations = Vec::new();
    if seed_residual > th.seed_residual {
        violations.push(format!("lemma seed residual {seed_residual:e} > {:e}", th.seed_residual));
    }

    let mut phi_checks = Vec::new();
    for m in PROBE {
        let x = m * t;
        let value = solve_phi(&lemma, x)?;
        phi_checks.push(SolverCheck {
            at: x,
            value,
            residual: lemma.psi(x, value).abs() / lemma.psi_scale(x, value),
            derivative: phi_derivative(&lemma, x, value)?,
            fd: phi_fd_check(&lemma, x)?,
            implicit_gap: None,
        });
    }

    let r = G_BASE_R * t;
    let x0 = stolarsky_mean(alpha, &Interval::new(t, t + r)?)?;
    let al = alpha.value();
    let mut g_checks = Vec::new();
    for m in PROBE {
        let h = m * r;
        let value = solve_g(alpha, x0, r, t, h)?;
        let derivative = g_derivative(alpha, h, value)?;
        let implicit = g_derivative_implicit(alpha, x0, h, value)?;
        g_checks.push(SolverCheck {
            at: h,
            value,
            residual: big_psi_residual(al, x0, h, value),
            derivative,
            fd: g_fd_check(alpha, x0, r, t, h)?,
            implicit_gap: Some((derivative - implicit).abs() / implicit.abs().max(f64::MIN_POSITIVE)),
        });
    }

    for (name, checks) in [("phi", &phi_checks), ("g", &g_checks)] {
        for c in checks {
            if c.residual > th.solver_residual {
                violations.push(format!("{name} solver residual {:e} at {}", c.residual, c.at));
            }
            if !c.fd.passes(th.fd_min_order, th.fd_roundoff) {
                violations.push(format!("{name}' finite-difference order {} at {}", c.fd.order, c.at));
            }
            if let Some(gap) = c.implicit_gap.filter(|g| *g > th.implicit_gap) {
                violations.push(format!("{name}' differs from implicit differentiation by {gap:e} at {}", c.at));
            }
        }
    }
    let cv = &convergence;
    if !cv.differences_decreasing {
        violations.push(format!("R, S, T differences stop shrinking at k = {}", cv.floor_k));
    }
    if !cv.x0_decreasing {
        violations.push("x0 - t is not decreasing in k".into());
    }
    if cv.identity_max_residual > th.identity {
        violations.push(format!("differentiated identity residual {:e}", cv.identity_max_residual));
    }
    if cv.chain_max_residual > th.identity {
        violations.push(format!("chain-rule identity residual {:e}", cv.chain_max_residual));
    }
    if !(cv.ode_limit.abs() <= th.ode_limit * (1.0 + f.d3(t)?.abs())) {
        violations.push(format!("limiting ODE residual {:e}", cv.ode_limit));
    }

    Ok(ProofcheckSummary {
        lemma,
        seed_residual,
        phi_checks,
        g_base: (r, x0),
        g_checks,
        convergence,
        thresholds: th.clone(),
        violations,
    })
}
