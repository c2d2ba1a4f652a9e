//! Seeded sweep of FDE and ODE residuals over random solution families.
//!
//! Randomness comes from ChaCha8 (`rand_chacha`) seeded with
//! `seed_from_u64(seed)`; uniform draws use `rand`'s `gen_range`. Both are
//! portable, so a seed reproduces the same sweep on every platform.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::expr::DifferentiableFn;
use crate::means::{Alpha, Interval};
use crate::solutions::{fde_residual, fde_scale, ode_residual, ResidualError, SolutionFamily};

pub const DEFAULT_ALPHA_GRID: [f64; 7] = [-3.0, -1.0, 0.0, 0.5, 1.0, 2.0, 3.0];

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub alpha_grid: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    /// Range of each coefficient `c1, c2, c3`.
    pub coeff_range: (f64, f64),
    /// Range of `a`, `b` and `t`.
    pub point_range: (f64, f64),
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            alpha_grid: DEFAULT_ALPHA_GRID.to_vec(),
            trials: 100,
            seed: 0,
            tol: 1e-9,
            coeff_range: (-10.0, 10.0),
            point_range: (0.1, 10.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Witness {
    pub alpha: f64,
    pub c: [f64; 3],
    pub a: f64,
    pub b: f64,
    pub t: f64,
    pub fde_rel: f64,
    pub ode_rel: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaRow {
    pub alpha: f64,
    pub trials: usize,
    pub max_fde_rel: f64,
    pub max_ode_rel: f64,
    /// Trial with the largest of the two relative residuals.
    pub worst: Option<Witness>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub tol: f64,
    pub rows: Vec<AlphaRow>,
    pub violations: Vec<Witness>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.rows.iter().all(|r| r.passed)
    }
}

fn within(x: f64, tol: f64) -> bool {
    // a zero or negative tolerance is never met
    tol > 0.0 && x <= tol
}

/// Runs `trials` random families per grid value. A trial fails when either
/// relative residual is above `tol` (or not finite).
pub fn verify_sweep(cfg: &SweepConfig) -> Result<SweepReport, ResidualError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (clo, chi) = cfg.coeff_range;
    let (plo, phi) = cfg.point_range;
    let mut rows = Vec::with_capacity(cfg.alpha_grid.len());
    let mut violations = Vec::new();
    for &al in &cfg.alpha_grid {
        let alpha = Alpha::new(al)?;
        let mut row = AlphaRow { alpha: al, trials: cfg.trials, max_fde_rel: 0.0, max_ode_rel: 0.0, worst: None, passed: true };
        let mut worst = -1.0;
        for _ in 0..cfg.trials {
            let c = [rng.gen_range(clo..chi), rng.gen_range(clo..chi), rng.gen_range(clo..chi)];
            let a = rng.gen_range(plo..phi);
            let mut b = rng.gen_range(plo..phi);
            while b == a {
                b = rng.gen_range(plo..phi);
            }
            let t = rng.gen_range(plo..phi);
            let f = DifferentiableFn::from(SolutionFamily::new(alpha, c[0], c[1], c[2]));
            let iv = Interval::new(a, b)?;
            let fde_rel = fde_residual(&f, alpha, &iv)?.abs() / fde_scale(&f, &iv)?;
            let ode_rel = ode_residual(&f, alpha, t)?.abs() / (1.0 + f.d3(t)?.abs());
            let w = Witness { alpha: al, c, a, b, t, fde_rel, ode_rel };
            row.max_fde_rel = row.max_fde_rel.max(fde_rel);
            row.max_ode_rel = row.max_ode_rel.max(ode_rel);
            if fde_rel.max(ode_rel) > worst {
                worst = fde_rel.max(ode_rel);
                row.worst = Some(w);
            }
            if !(within(fde_rel, cfg.tol) && within(ode_rel, cfg.tol)) {
                row.passed = false;
                violations.push(w);
            }
        }
        rows.push(row);
    }
    Ok(SweepReport { tol: cfg.tol, rows, violations })
}
