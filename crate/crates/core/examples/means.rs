//! Evaluate S_alpha(a, b) across the parameter range, including the
//! logarithmic (alpha = 0) and identric (alpha = 1) limits.

use stolarsky::means::{identric_mean, logarithmic_mean, stolarsky_mean};
use stolarsky::{Alpha, Interval};

fn main() -> Result<(), stolarsky::MeanError> {
    let iv = Interval::new(1.0, 4.0)?;
    println!("{:>10}  S_alpha(1, 4)", "alpha");
    for al in [-8.0, -1.0, -1e-9, 0.0, 1e-9, 0.5, 1.0, 2.0, 3.0, 8.0] {
        println!("{al:>10}  {}", stolarsky_mean(Alpha::new(al)?, &iv)?);
    }
    println!("logarithmic mean  {}", logarithmic_mean(&iv));
    println!("identric mean     {}", identric_mean(&iv)?);

    // nearly equal endpoints stay accurate
    let close = Interval::new(1.0, 1.0 + 1e-12)?;
    println!("S_3(1, 1 + 1e-12) - 1 = {:e}", stolarsky_mean(Alpha::new(3.0)?, &close)? - 1.0);
    Ok(())
}
