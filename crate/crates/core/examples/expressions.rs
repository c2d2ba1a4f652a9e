//! Parse an expression, differentiate it symbolically and evaluate
//! the first three derivatives.

use stolarsky::expr::{differentiate, parse, simplify};
use stolarsky::DifferentiableFn;

fn main() {
    let text = std::env::args().nth(1).unwrap_or_else(|| "x^3 * log(x) - exp(-x) / 2".into());
    let e = match parse(&text) {
        Ok(e) => e,
        Err(err) => {
            eprintln!("{err}");
            std::process::exit(2);
        }
    };
    println!("f     = {e}");
    let mut d = e.clone();
    for name in ["f'", "f''", "f'''"] {
        d = simplify(differentiate(&d));
        println!("{name:<5} = {d}");
    }

    let f = DifferentiableFn::from_expr(e);
    for x in [0.5, 1.0, 2.0] {
        let vals: Vec<String> = (0..4).map(|o| format!("{:.6}", f.eval(o, x).unwrap_or(f64::NAN))).collect();
        println!("x = {x}: {}", vals.join("  "));
    }
}
