//! Expressions in one variable `x`, with exact symbolic derivatives.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! expr  := term (("+" | "-") term)*
//! term  := unary (("*" | "/") unary)*
//! unary := "-" unary | power
//! power := atom ("^" unary)?          (right-associative)
//! atom  := NUMBER | "x" | "e" | "pi" | FUNC "(" expr ")" | "(" expr ")"
//! FUNC  := "log" | "exp" | "sqrt"
//! ```
//!
//! `^` binds tighter than unary minus, so `-x^2` is `-(x^2)`.

use std::fmt;

use thiserror::Error;

use crate::solutions::SolutionFamily;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("overflow evaluating {0}")]
    Overflow(String),
    #[error("derivative order {0} is not supported (0..=3)")]
    Order(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {offset}: expected {}, found {found}", expected.join(" | "))]
pub struct SyntaxError {
    pub offset: usize,
    pub expected: Vec<String>,
    pub found: String,
}

/// Expression tree over the variable `x`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Var,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Log(Box<Expr>),
    Exp(Box<Expr>),
    Sqrt(Box<Expr>),
}

use Expr::*;

fn bx(e: Expr) -> Box<Expr> {
    Box::new(e)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(v) => write!(f, "number {v}"),
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, SyntaxError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == b'.' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                let mut j = i + 1;
                if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                    j += 1;
                }
                if j < bytes.len() && bytes[j].is_ascii_digit() {
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                }
            }
            let lit = &text[start..i];
            let v: f64 = lit.parse().map_err(|_| SyntaxError {
                offset: start,
                expected: vec!["number".into()],
                found: format!("`{lit}`"),
            })?;
            out.push((start, Tok::Num(v)));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
        } else if b"+-*/^()".contains(&c) {
            out.push((i, Tok::Sym(c as char)));
            i += 1;
        } else {
            let ch = text[i..].chars().next().unwrap_or('?');
            return Err(SyntaxError { offset: i, expected: vec!["token".into()], found: format!("`{ch}`") });
        }
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

const ATOM_START: &[&str] = &["number", "x", "e", "pi", "log(", "exp(", "sqrt(", "(", "-"];

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T, SyntaxError> {
        Err(SyntaxError {
            offset: self.offset(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().to_string(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Add(bx(lhs), bx(self.term()?));
            } else if self.eat('-') {
                lhs = Sub(bx(lhs), bx(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Mul(bx(lhs), bx(self.unary()?));
            } else if self.eat('/') {
                lhs = Div(bx(lhs), bx(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, SyntaxError> {
        if self.eat('-') {
            Ok(Neg(bx(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, SyntaxError> {
        let base = self.atom()?;
        if self.eat('^') {
            Ok(Pow(bx(base), bx(self.unary()?)))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, SyntaxError> {
        match self.peek().clone() {
            Tok::Num(v) => {
                self.pos += 1;
                Ok(Const(v))
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.fail(&[")", "operator"]);
                }
                Ok(inner)
            }
            Tok::Ident(name) => {
                let wrap: fn(Box<Expr>) -> Expr = match name.as_str() {
                    "x" => {
                        self.pos += 1;
                        return Ok(Var);
                    }
                    "e" => {
                        self.pos += 1;
                        return Ok(Const(std::f64::consts::E));
                    }
                    "pi" => {
                        self.pos += 1;
                        return Ok(Const(std::f64::consts::PI));
                    }
                    "log" => Log,
                    "exp" => Exp,
                    "sqrt" => Sqrt,
                    _ => return self.fail(ATOM_START),
                };
                self.pos += 1;
                if !self.eat('(') {
                    return self.fail(&["("]);
                }
                let arg = self.expr()?;
                if !self.eat(')') {
                    return self.fail(&[")", "operator"]);
                }
                Ok(wrap(bx(arg)))
            }
            _ => self.fail(ATOM_START),
        }
    }
}

/// Parses `text` into an expression tree.
pub fn parse(text: &str) -> Result<Expr, SyntaxError> {
    let mut p = Parser { toks: tokenize(text)?, pos: 0 };
    if *p.peek() == Tok::End {
        return p.fail(ATOM_START);
    }
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail(&["operator", "end of input"]);
    }
    Ok(e)
}

fn prec(e: &Expr) -> u8 {
    match e {
        Add(..) | Sub(..) => 1,
        Mul(..) | Div(..) => 2,
        Neg(_) => 3,
        Const(v) if v.is_sign_negative() => 3,
        Pow(..) => 4,
        _ => 5,
    }
}

fn fmt_num(v: f64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let a = v.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) {
        write!(f, "{v}")
    } else {
        write!(f, "{v:e}")
    }
}

fn paren(e: &Expr, need: bool, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if need {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    /// Minimal-parenthesis rendering that parses back to the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Const(v) => fmt_num(*v, f),
            Var => write!(f, "x"),
            Add(l, r) | Sub(l, r) | Mul(l, r) | Div(l, r) => {
                let (p, op) = match self {
                    Add(..) => (1, "+"),
                    Sub(..) => (1, "-"),
                    Mul(..) => (2, "*"),
                    _ => (2, "/"),
                };
                paren(l, prec(l) < p, f)?;
                write!(f, " {op} ")?;
                paren(r, prec(r) <= p, f)
            }
            Pow(b, e) => {
                paren(b, prec(b) < 5, f)?;
                write!(f, "^")?;
                paren(e, prec(e) < 3, f)
            }
            Neg(a) => {
                write!(f, "-")?;
                paren(a, prec(a) < 3, f)
            }
            Log(a) => write!(f, "log({a})"),
            Exp(a) => write!(f, "exp({a})"),
            Sqrt(a) => write!(f, "sqrt({a})"),
        }
    }
}

fn checked(v: f64, what: &str) -> Result<f64, EvalError> {
    if v.is_finite() {
        Ok(v)
    } else if v.is_nan() {
        Err(EvalError::Domain(format!("{what} is undefined")))
    } else {
        Err(EvalError::Overflow(what.to_string()))
    }
}

impl Expr {
    /// Evaluates at `x`. Errors on log/sqrt of non-positive values, division
    /// by zero, `0^negative`, non-integer powers of negative numbers, and
    /// non-finite intermediates.
    pub fn eval(&self, x: f64) -> Result<f64, EvalError> {
        Ok(match self {
            Const(v) => *v,
            Var => x,
            Add(l, r) => checked(l.eval(x)? + r.eval(x)?, "sum")?,
            Sub(l, r) => checked(l.eval(x)? - r.eval(x)?, "difference")?,
            Mul(l, r) => checked(l.eval(x)? * r.eval(x)?, "product")?,
            Div(l, r) => {
                let d = r.eval(x)?;
                if d == 0.0 {
                    return Err(EvalError::Domain(format!("division by zero at x = {x}")));
                }
                checked(l.eval(x)? / d, "quotient")?
            }
            Pow(b, e) => {
                let (bv, ev) = (b.eval(x)?, e.eval(x)?);
                if bv == 0.0 && ev < 0.0 {
                    return Err(EvalError::Domain(format!("0 raised to negative power at x = {x}")));
                }
                if bv < 0.0 && ev.fract() != 0.0 {
                    return Err(EvalError::Domain(format!("negative base {bv} to non-integer power {ev}")));
                }
                checked(bv.powf(ev), "power")?
            }
            Neg(a) => -a.eval(x)?,
            Log(a) => {
                let v = a.eval(x)?;
                if v <= 0.0 {
                    return Err(EvalError::Domain(format!("log of non-positive {v}")));
                }
                v.ln()
            }
            Exp(a) => checked(a.eval(x)?.exp(), "exp")?,
            Sqrt(a) => {
                let v = a.eval(x)?;
                if v <= 0.0 {
                    return Err(EvalError::Domain(format!("sqrt of non-positive {v}")));
                }
                v.sqrt()
            }
        })
    }

    pub fn depends_on_x(&self) -> bool {
        match self {
            Const(_) => false,
            Var => true,
            Add(l, r) | Sub(l, r) | Mul(l, r) | Div(l, r) | Pow(l, r) => l.depends_on_x() || r.depends_on_x(),
            Neg(a) | Log(a) | Exp(a) | Sqrt(a) => a.depends_on_x(),
        }
    }

    /// Symbolic `d/dx`, simplified.
    pub fn derivative(&self) -> Expr {
        simplify(self.raw_derivative())
    }

    fn raw_derivative(&self) -> Expr {
        match self {
            Const(_) => Const(0.0),
            Var => Const(1.0),
            Add(l, r) => Add(bx(l.derivative()), bx(r.derivative())),
            Sub(l, r) => Sub(bx(l.derivative()), bx(r.derivative())),
            Mul(l, r) => Add(
                bx(Mul(bx(l.derivative()), r.clone())),
                bx(Mul(l.clone(), bx(r.derivative()))),
            ),
            Div(l, r) if !r.depends_on_x() => Div(bx(l.derivative()), r.clone()),
            Div(l, r) => Div(
                bx(Sub(
                    bx(Mul(bx(l.derivative()), r.clone())),
                    bx(Mul(l.clone(), bx(r.derivative()))),
                )),
                bx(Pow(r.clone(), bx(Const(2.0)))),
            ),
            Pow(b, e) if !e.depends_on_x() => Mul(
                bx(Mul(e.clone(), bx(Pow(b.clone(), bx(Sub(e.clone(), bx(Const(1.0)))))))),
                bx(b.derivative()),
            ),
            // u^v = exp(v log u)  =>  u^v (v' log u + v u' / u)
            Pow(b, e) => Mul(
                bx(self.clone()),
                bx(Add(
                    bx(Mul(bx(e.derivative()), bx(Log(b.clone())))),
                    bx(Div(bx(Mul(e.clone(), bx(b.derivative()))), b.clone())),
                )),
            ),
            Neg(a) => Neg(bx(a.derivative())),
            Log(a) => Div(bx(a.derivative()), a.clone()),
            Exp(a) => Mul(bx(self.clone()), bx(a.derivative())),
            Sqrt(a) => Div(bx(a.derivative()), bx(Mul(bx(Const(2.0)), bx(self.clone())))),
        }
    }
}

/// `differentiate(e)`: the simplified symbolic derivative.
pub fn differentiate(e: &Expr) -> Expr {
    e.derivative()
}

fn fold(v: f64) -> Option<Expr> {
    v.is_finite().then_some(Const(v))
}

/// Constant folding and 0/1 identities. Never cancels subexpressions that
/// could carry a domain error (`x/x` stays as is).
pub fn simplify(e: Expr) -> Expr {
    match e {
        Add(l, r) => match (simplify(*l), simplify(*r)) {
            (Const(a), Const(b)) => fold(a + b).unwrap_or(Add(bx(Const(a)), bx(Const(b)))),
            (Const(0.0), o) | (o, Const(0.0)) => o,
            (l, Neg(r)) => Sub(bx(l), r),
            (l, r) => Add(bx(l), bx(r)),
        },
        Sub(l, r) => match (simplify(*l), simplify(*r)) {
            (Const(a), Const(b)) => fold(a - b).unwrap_or(Sub(bx(Const(a)), bx(Const(b)))),
            (o, Const(0.0)) => o,
            (Const(0.0), o) => simplify(Neg(bx(o))),
            (l, Neg(r)) => Add(bx(l), r),
            (l, r) => Sub(bx(l), bx(r)),
        },
        Mul(l, r) => match (simplify(*l), simplify(*r)) {
            (Const(a), Const(b)) => fold(a * b).unwrap_or(Mul(bx(Const(a)), bx(Const(b)))),
            (Const(z), _) | (_, Const(z)) if z == 0.0 => Const(0.0),
            (Const(1.0), e) | (e, Const(1.0)) => e,
            (Const(m), e) | (e, Const(m)) if m == -1.0 => simplify(Neg(bx(e))),
            (Const(a), Mul(l2, r2)) if matches!(*l2, Const(_)) => {
                let Const(b) = *l2 else { unreachable!() };
                simplify(Mul(bx(Const(a * b)), r2))
            }
            (Neg(a), b) | (b, Neg(a)) => simplify(Neg(bx(Mul(bx(b), a)))),
            (e, Div(n, d)) | (Div(n, d), e) if *n == Const(1.0) => Div(bx(e), d),
            (l, Const(c)) => Mul(bx(Const(c)), bx(l)),
            (l, r) => Mul(bx(l), bx(r)),
        },
        Div(l, r) => match (simplify(*l), simplify(*r)) {
            (Const(a), Const(b)) if b != 0.0 => fold(a / b).unwrap_or(Div(bx(Const(a)), bx(Const(b)))),
            (e, Const(1.0)) => e,
            (Neg(a), b) => simplify(Neg(bx(Div(a, bx(b))))),
            (a, Neg(b)) => simplify(Neg(bx(Div(bx(a), b)))),
            (Mul(l2, r2), Const(b)) if matches!(*l2, Const(_)) => {
                let Const(a) = *l2 else { unreachable!() };
                simplify(Mul(bx(Const(a / b)), r2))
            }
            (l, r) => Div(bx(l), bx(r)),
        },
        Pow(b, p) => match (simplify(*b), simplify(*p)) {
            (Const(a), Const(c)) if a > 0.0 || (a != 0.0 && c.fract() == 0.0) => {
                fold(a.powf(c)).unwrap_or(Pow(bx(Const(a)), bx(Const(c))))
            }
            (e, Const(1.0)) => e,
            (b, p) => Pow(bx(b), bx(p)),
        },
        Neg(a) => match simplify(*a) {
            Const(v) => Const(-v),
            Neg(inner) => *inner,
            o => Neg(bx(o)),
        },
        Log(a) => match simplify(*a) {
            Const(v) if v > 0.0 => Const(v.ln()),
            o => Log(bx(o)),
        },
        Exp(a) => match simplify(*a) {
            Const(v) => fold(v.exp()).unwrap_or(Exp(bx(Const(v)))),
            o => Exp(bx(o)),
        },
        Sqrt(a) => match simplify(*a) {
            Const(v) if v > 0.0 => Const(v.sqrt()),
            o => Sqrt(bx(o)),
        },
        leaf => leaf,
    }
}

/// Where a [`DifferentiableFn`] came from.
#[derive(Debug, Clone, PartialEq)]
pub enum Origin {
    Family(SolutionFamily),
    Expr(Expr),
}

/// `f` together with evaluators for `f'`, `f''`, `f'''`.
#[derive(Debug, Clone, PartialEq)]
pub struct DifferentiableFn {
    origin: Origin,
    /// `[f, f', f'', f''']` for expression-backed functions.
    derivatives: Option<Box<[Expr; 4]>>,
}

impl DifferentiableFn {
    pub fn from_family(family: SolutionFamily) -> Self {
        DifferentiableFn { origin: Origin::Family(family), derivatives: None }
    }

    pub fn from_expr(e: Expr) -> Self {
        let d1 = e.derivative();
        let d2 = d1.derivative();
        let d3 = d2.derivative();
        DifferentiableFn { derivatives: Some(Box::new([e.clone(), d1, d2, d3])), origin: Origin::Expr(e) }
    }

    /// Parses `text` and differentiates it three times.
    pub fn parse(text: &str) -> Result<Self, SyntaxError> {
        Ok(Self::from_expr(parse(text)?))
    }

    pub fn origin(&self) -> &Origin {
        &self.origin
    }

    /// The symbolic derivative trees, for expression-backed functions.
    pub fn derivative_exprs(&self) -> Option<&[Expr; 4]> {
        self.derivatives.as_deref()
    }

    /// `f^(order)(x)` for `order` in `0..=3`.
    pub fn eval(&self, order: usize, x: f64) -> Result<f64, EvalError> {
        if order > 3 {
            return Err(EvalError::Order(order));
        }
        if !(x > 0.0) {
            return Err(EvalError::Domain(format!("x must be positive, got {x}")));
        }
        match (&self.origin, &self.derivatives) {
            (Origin::Family(fam), _) => fam.eval(x, order),
            (_, Some(d)) => d[order].eval(x),
            (Origin::Expr(_), None) => unreachable!("expression functions carry derivatives"),
        }
    }

    pub fn value(&self, x: f64) -> Result<f64, EvalError> {
        self.eval(0, x)
    }

    pub fn d1(&self, x: f64) -> Result<f64, EvalError> {
        self.eval(1, x)
    }

    pub fn d2(&self, x: f64) -> Result<f64, EvalError> {
        self.eval(2, x)
    }

    pub fn d3(&self, x: f64) -> Result<f64, EvalError> {
        self.eval(3, x)
    }
}

impl From<SolutionFamily> for DifferentiableFn {
    fn from(f: SolutionFamily) -> Self {
        Self::from_family(f)
    }
}

impl From<Expr> for DifferentiableFn {
    fn from(e: Expr) -> Self {
        Self::from_expr(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Expr {
        parse(s).unwrap()
    }

    fn c(v: f64) -> Box<Expr> {
        bx(Const(v))
    }

    #[test]
    fn parse_shapes() {
        assert_eq!(p("x^2"), Pow(bx(Var), c(2.0)));
        assert_eq!(
            p("1/x + 3*x - 2"),
            Sub(bx(Add(bx(Div(c(1.0), bx(Var))), bx(Mul(c(3.0), bx(Var))))), c(2.0))
        );
        assert_eq!(p("-x^2"), Neg(bx(Pow(bx(Var), c(2.0)))));
        assert_eq!(p("2^3^2"), Pow(c(2.0), bx(Pow(c(3.0), c(2.0)))));
        assert_eq!(p("x^-1"), Pow(bx(Var), bx(Neg(c(1.0)))));
        assert_eq!(p(" log ( x ) "), Log(bx(Var)));
        assert_eq!(p("1.5e-3"), Const(1.5e-3));
        assert_eq!(p("e"), Const(std::f64::consts::E));
        assert!(parse("2e").is_err());
    }

    #[test]
    fn syntax_errors_report_offsets() {
        let e = parse("x^").unwrap_err();
        assert_eq!(e.offset, 2);
        assert!(e.expected.contains(&"x".to_string()));
        let e = parse("c").unwrap_err();
        assert_eq!(e.offset, 0);
        assert!(e.found.contains('c'));
        assert_eq!(parse("(x + 1").unwrap_err().offset, 6);
        assert_eq!(parse("x x").unwrap_err().offset, 2);
        assert_eq!(parse("log x").unwrap_err().offset, 4);
        assert_eq!(parse("x $ 2").unwrap_err().offset, 2);
        assert_eq!(parse("").unwrap_err().offset, 0);
        assert_eq!(parse("   ").unwrap_err().offset, 3);
    }

    #[test]
    fn evaluation() {
        assert_eq!(p("x^2").eval(3.0).unwrap(), 9.0);
        assert_eq!(p("log(x)").eval(1.0).unwrap(), 0.0);
        assert_eq!(p("1/x").eval(0.25).unwrap(), 4.0);
        assert_eq!(p("(x - 2)^3").eval(1.0).unwrap(), -1.0);
        assert!(matches!(p("log(x - 1)").eval(1.0), Err(EvalError::Domain(_))));
        assert!(matches!(p("sqrt(x - 2)").eval(1.0), Err(EvalError::Domain(_))));
        assert!(matches!(p("1/(x - 1)").eval(1.0), Err(EvalError::Domain(_))));
        assert!(matches!(p("(x - 1)^-2").eval(1.0), Err(EvalError::Domain(_))));
        assert!(matches!(p("(x - 2)^0.5").eval(1.0), Err(EvalError::Domain(_))));
        assert!(matches!(p("exp(x)").eval(1000.0), Err(EvalError::Overflow(_))));
    }

    #[test]
    fn derivatives() {
        assert_eq!(p("x^2").derivative(), Mul(c(2.0), bx(Var)));
        assert_eq!(p("x^2").derivative().eval(3.0).unwrap(), 6.0);
        assert_eq!(p("log(x)").derivative(), Div(c(1.0), bx(Var)));
        assert!((p("x^x").derivative().eval(1.0).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(p("7").derivative(), Const(0.0));
        assert_eq!(p("3*x + 2").derivative(), Const(3.0));
        assert_eq!(p("exp(2*x)").derivative(), Mul(c(2.0), bx(Exp(bx(Mul(c(2.0), bx(Var)))))));
    }

    #[test]
    fn simplifier_preserves_domain() {
        assert_eq!(simplify(p("x/x")), p("x/x"));
        assert_eq!(simplify(p("log(x) - log(x)")), p("log(x) - log(x)"));
        assert_eq!(simplify(p("0 + x*1")), Var);
        assert_eq!(simplify(p("--x")), Var);
        assert_eq!(simplify(p("2^3")), Const(8.0));
        // negative base with a fractional exponent stays unevaluated
        assert_eq!(simplify(p("(0 - 8)^(1/2)")), Pow(c(-8.0), c(0.5)));
    }

    #[test]
    fn display_round_trips() {
        for s in ["x^2", "1/x + 3*x - 2", "-x^2", "(-x)^2", "2^3^2", "(2^3)^2", "x - (x - 1)", "x / (x * 2)", "exp(-x) * sqrt(x)", "x^-1", "-(x + 1)", "1e-20 * x", "x^(1/2)"] {
            let e = p(s);
            assert_eq!(p(&e.to_string()), e, "{s} -> {e}");
        }
        assert_eq!(Mul(bx(Const(-2.0)), bx(Var)).to_string(), "-2 * x");
    }

    #[test]
    fn differentiable_fn_orders() {
        let f = DifferentiableFn::parse("x^4").unwrap();
        assert_eq!(f.eval(0, 2.0).unwrap(), 16.0);
        assert_eq!(f.eval(1, 2.0).unwrap(), 32.0);
        assert_eq!(f.eval(2, 2.0).unwrap(), 48.0);
        assert_eq!(f.eval(3, 2.0).unwrap(), 48.0);
        assert!(matches!(f.eval(4, 2.0), Err(EvalError::Order(4))));
        assert!(matches!(f.eval(0, -1.0), Err(EvalError::Domain(_))));
    }
}
