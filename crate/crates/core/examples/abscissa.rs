//! Mean-value abscissas: points c in (a, b) with f'(c) equal to the secant
//! slope, compared against S_alpha(a, b).

use stolarsky::abscissa::{abscissa_report, mean_value_abscissas, DEFAULT_GRID, DEFAULT_TOL};
use stolarsky::{Alpha, DifferentiableFn, Interval};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let iv = Interval::new(1.0, 4.0)?;

    // 1/x: the abscissa is the geometric mean, S_{-1}
    let f = DifferentiableFn::parse("1/x")?;
    let rep = abscissa_report(&f, Alpha::new(-1.0)?, &iv, DEFAULT_GRID, DEFAULT_TOL)?;
    println!("1/x   : abscissas {:?}, S_-1 = {}, matches {}", rep.abscissas, rep.mean, rep.matches);

    let f = DifferentiableFn::parse("x^3")?;
    let rep = abscissa_report(&f, Alpha::new(2.0)?, &iv, DEFAULT_GRID, DEFAULT_TOL)?;
    println!("x^3   : abscissas {:?}, S_2 = {}, matches {}", rep.abscissas, rep.mean, rep.matches);

    // several abscissas
    let f = DifferentiableFn::parse("(x - 1) * (x - 2) * (x - 3) * (x - 4)")?;
    let cs = mean_value_abscissas(&f, &Interval::new(0.5, 4.5)?, DEFAULT_GRID, DEFAULT_TOL)?;
    println!("quartic on (0.5, 4.5): {cs:?}");

    // a linear function has no isolated abscissa
    let f = DifferentiableFn::parse("3*x + 1")?;
    match mean_value_abscissas(&f, &iv, DEFAULT_GRID, DEFAULT_TOL) {
        Ok(cs) => println!("3x + 1: {cs:?}"),
        Err(e) => println!("3x + 1: {e}"),
    }
    Ok(())
}
