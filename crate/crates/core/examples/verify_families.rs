//! Seeded sweep over the solution families c1 x^alpha + c2 x + c3
//! (with log forms at alpha = 0, 1), plus a non-member for contrast.

use stolarsky::solutions::membership;
use stolarsky::sweep::{verify_sweep, SweepConfig};
use stolarsky::{Alpha, DifferentiableFn};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let rep = verify_sweep(&SweepConfig { seed, trials: 200, ..SweepConfig::default() })?;
    println!("{:>6} {:>12} {:>12}", "alpha", "fde", "ode");
    for row in &rep.rows {
        println!("{:>6} {:>12.3e} {:>12.3e}", row.alpha, row.max_fde_rel, row.max_ode_rel);
    }
    println!("passed: {}", rep.passed());

    let cube = DifferentiableFn::parse("x^3")?;
    let m = membership(&cube, Alpha::new(2.0)?, 1.0, 2.0)?;
    println!("x^3 against alpha = 2: max residual {:.4}, member {}", m.max_abs_residual, m.member);
    Ok(())
}
