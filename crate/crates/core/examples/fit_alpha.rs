//! Recover alpha from observed (a, b, c) triples where c = S_alpha(a, b).

use stolarsky::convergence::median;
use stolarsky::means::{invert_alpha, stolarsky_mean};
use stolarsky::{Alpha, Interval};

fn main() -> Result<(), stolarsky::MeanError> {
    let truth = Alpha::new(1.7)?;
    let mut fits = Vec::new();
    for (a, b) in [(0.5, 2.0), (1.0, 9.0), (3.0, 3.5), (0.2, 7.0)] {
        let iv = Interval::new(a, b)?;
        let c = stolarsky_mean(truth, &iv)?;
        let fit = invert_alpha(&iv, c)?.value();
        println!("a = {a}, b = {b}, c = {c:.12}: alpha = {fit:.12}");
        fits.push(fit);
    }
    println!("median {:.12}", median(&fits));

    // c outside (a, b) cannot be a mean
    println!("{}", invert_alpha(&Interval::new(1.0, 3.0)?, 5.0).unwrap_err());
    Ok(())
}
