//! Numerical check of the uniqueness argument: implicit solvers, their
//! derivatives and the R, S, T limits as r = 2^-k shrinks.

use stolarsky::proofcheck::{run_proofcheck, Thresholds};
use stolarsky::{Alpha, DifferentiableFn, SolutionFamily};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let al: f64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3.0);
    let alpha = Alpha::new(al)?;
    let f = DifferentiableFn::from(SolutionFamily::new(alpha, 1.0, 1.0, 1.0));
    let sum = run_proofcheck(alpha, &f, 1.0, 16, &Thresholds::default())?;

    println!("seed residual {:e}", sum.seed_residual);
    for c in sum.phi_checks.iter().chain(&sum.g_checks) {
        println!("at {:.4}: value {:.10}, residual {:.1e}, fd order {:.2}", c.at, c.value, c.residual, c.fd.order);
    }
    let cv = &sum.convergence;
    println!(" k        T/S     x0 - t   identity");
    for row in &cv.rows {
        println!("{:>2} {:>10.6} {:>10.3e} {:>10.1e}", row.k, row.t_over_s, row.x0_minus_t, row.identity_residual);
    }
    println!("limit T/S {:.8}, ode limit {:.1e}", cv.t_over_s_limit, cv.ode_limit);
    for v in &sum.violations {
        println!("violation: {v}");
    }
    println!("{}", if sum.passed() { "ok" } else { "FAILED" });
    Ok(())
}
