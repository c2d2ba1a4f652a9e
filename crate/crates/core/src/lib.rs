//! # stolarsky
//!
//! Stolarsky means, Lagrange mean-value abscissas, and numerical checks of
//! the functional-differential equation
//!
//! ```text
//! f(b) - f(a) = (b - a) f'(S_alpha(a, b)),   a, b > 0
//! ```
//!
//! whose differentiable solutions are exactly `c1 x^alpha + c2 x + c3`
//! (with `c1 x^alpha log x` replacing the power term when `alpha` is 0 or 1).
//!
//! The crate is organised by capability:
//!
//! - [`means`]: cancellation-free evaluation of `S_alpha(a, b)`, the
//!   logarithmic and identric means, and inversion for `alpha`.
//! - [`expr`]: a small expression language over `x` with exact symbolic
//!   derivatives, and [`DifferentiableFn`], the common carrier for `f` and
//!   its first three derivatives.
//! - [`solutions`]: the solution families and FDE/ODE residuals.
//! - [`abscissa`]: all `c` in `(a, b)` with `f'(c)` equal to the secant slope.
//! - [`proofcheck`]: the implicit-function constructions and the `r -> 0`
//!   asymptotics that reduce the FDE to `f''' = (alpha - 2) f'' / t`.
//! - [`cli`]: the batch command-line surface used by the `stolarsky` binary.
//!
//! ```
//! use stolarsky::means::{stolarsky_mean, Alpha, Interval};
//!
//! let iv = Interval::new(1.0, 4.0).unwrap();
//! let g = stolarsky_mean(Alpha::new(-1.0).unwrap(), &iv).unwrap();
//! assert!((g - 2.0).abs() < 1e-15);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod abscissa;
pub mod bracket;
pub mod cli;
pub mod convergence;
pub mod dd;
pub mod expr;
pub mod means;
pub mod proofcheck;
pub mod solutions;
pub mod stable;
pub mod sweep;

pub use expr::{DifferentiableFn, EvalError, Expr};
pub use means::{Alpha, Branch, Interval, MeanError};
pub use solutions::SolutionFamily;
