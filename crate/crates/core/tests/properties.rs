mod common;

use proptest::prelude::*;

use stolarsky::abscissa::mean_value_abscissas;
use stolarsky::bracket::bisect;
use stolarsky::convergence::fd_check;
use stolarsky::expr::{differentiate, parse, simplify};
use stolarsky::means::{invert_alpha, logarithmic_mean, identric_mean, stolarsky_mean};
use stolarsky::proofcheck::{big_psi_residual, lemma_seed, rst_terms, solve_g, solve_phi};
use stolarsky::solutions::{fde_residual, fde_scale};
use stolarsky::{Alpha, DifferentiableFn, Expr, Interval, SolutionFamily};

fn s(al: f64, a: f64, b: f64) -> f64 {
    stolarsky_mean(Alpha::new(al).unwrap(), &Interval::new(a, b).unwrap()).unwrap()
}

/// `(a, b)` with `a` log-uniform in `[1e-3, 1e3]` and `b / a` in `[lo, hi]`.
fn pair(lo: f64, hi: f64) -> impl Strategy<Value = (f64, f64)> {
    (-3.0f64..3.0, lo.ln()..hi.ln()).prop_map(|(la, lr)| {
        let a = 10f64.powf(la);
        (a, a * lr.exp())
    })
}

proptest! {
    #[test]
    fn internality((a, b) in pair(1.0 + 1e-6, 1e3), al in -20.0f64..20.0) {
        let m = s(al, a, b);
        prop_assert!(a < m && m < b, "{m} not inside ({a}, {b})");
    }

    #[test]
    fn symmetry((a, b) in pair(1.0, 1e3), al in -20.0f64..20.0) {
        prop_assert_eq!(s(al, a, b), s(al, b, a));
    }

    #[test]
    fn homogeneity((a, b) in pair(1.0, 1e3), al in -10.0f64..10.0) {
        let m = s(al, a, b);
        for t in [1e-3, 1.0, 1e3] {
            let scaled = s(al, t * a, t * b);
            prop_assert!((scaled - t * m).abs() <= 1e-12 * t * m, "t = {t}");
        }
    }

    #[test]
    fn monotone_in_alpha((a, b) in pair(1.01, 1e3), al in -10.0f64..10.0, d in 1e-3f64..2.0) {
        prop_assert!(s(al, a, b) <= s(al + d, a, b));
    }

    #[test]
    fn continuous_at_singular_parameters((a, b) in pair(1.01, 1e3)) {
        let iv = Interval::new(a, b).unwrap();
        let (l, i) = (logarithmic_mean(&iv), identric_mean(&iv).unwrap());
        for (centre, limit) in [(0.0, l), (1.0, i)] {
            for sign in [1.0, -1.0] {
                let gaps: Vec<f64> = (1..=12).map(|k| (s(centre + sign * 10f64.powi(-k), a, b) - limit).abs()).collect();
                for w in gaps.windows(2) {
                    // monotone until the gap reaches roundoff
                    if w[1] > 1e-14 * l {
                        prop_assert!(w[1] < w[0], "{gaps:?}");
                    }
                }
                prop_assert!(gaps[11] <= 1e-9 * l);
            }
        }
    }

    #[test]
    fn invert_round_trip((a, b) in pair(1.05, 1e2), al in -5.0f64..5.0) {
        let iv = Interval::new(a, b).unwrap();
        let c = s(al, a, b);
        let back = invert_alpha(&iv, c).unwrap().value();
        prop_assert!((back - al).abs() <= 1e-6, "{back} vs {al}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn near_equal_matches_oracle(a in 1e-3f64..1e3, k in 1u32..=14, al in -8.0f64..8.0) {
        let b = a * (1.0 + 10f64.powi(-(k as i32)));
        prop_assume!(b > a);
        let m = s(al, a, b);
        prop_assert!(a <= m && m <= b);
        let exact = common::Oracle::new().stolarsky(al, a, b);
        prop_assert!(common::rel_err(m, exact) <= 1e-10);
    }
}

fn expr_strategy() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        Just(Expr::Var),
        prop::sample::select(vec![0.5, 1.0, 1.5, 2.0, 3.0, 0.25]).prop_map(Expr::Const),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        let b = |e: Expr| Box::new(e);
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(move |(l, r)| Expr::Add(b(l), b(r))),
            (inner.clone(), inner.clone()).prop_map(move |(l, r)| Expr::Sub(b(l), b(r))),
            (inner.clone(), inner.clone()).prop_map(move |(l, r)| Expr::Mul(b(l), b(r))),
            (inner.clone(), inner.clone()).prop_map(move |(l, r)| Expr::Div(b(l), b(r))),
            (inner.clone(), prop::sample::select(vec![2.0, 3.0, 0.5]))
                .prop_map(move |(l, p)| Expr::Pow(b(l), b(Expr::Const(p)))),
            inner.clone().prop_map(move |l| Expr::Pow(b(l), b(Expr::Neg(b(Expr::Const(1.0)))))),
            inner.clone().prop_map(move |e| Expr::Pow(b(e), b(Expr::Var))),
            inner.clone().prop_map(move |e| Expr::Neg(b(e))),
            inner.clone().prop_map(move |e| Expr::Log(b(e))),
            inner.clone().prop_map(move |e| Expr::Exp(b(e))),
            inner.clone().prop_map(move |e| Expr::Sqrt(b(e))),
        ]
    })
}

/// `f` is finite and moderate on `[x - 2h, x + 2h]` for every order.
fn tame(f: &DifferentiableFn, x: f64, h: f64) -> bool {
    (0..=3).all(|o| {
        [x - 2.0 * h, x - h, x, x + h, x + 2.0 * h]
            .iter()
            .all(|&y| f.eval(o, y).is_ok_and(|v| v.abs() < 1e6))
    })
}

proptest! {
    #[test]
    fn print_parse_round_trip(e in expr_strategy()) {
        let text = e.to_string();
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &e, "{}", text);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn simplify_preserves_values(e in expr_strategy(), x in 0.5f64..3.0) {
        if let Ok(v) = e.eval(x) {
            prop_assume!(v.abs() < 1e6);
            let w = simplify(e.clone()).eval(x).unwrap();
            prop_assert!((v - w).abs() <= 1e-10 * v.abs().max(1.0), "{e}: {v} vs {w}");
        }
    }

    #[test]
    fn derivatives_are_second_order_consistent(e in expr_strategy(), x in 0.5f64..3.0) {
        let f = DifferentiableFn::from_expr(e);
        let h0 = 1e-2;
        prop_assume!(tame(&f, x, h0));
        for order in 0..3 {
            let exact = f.eval(order + 1, x).unwrap();
            let c = fd_check(|y| f.eval(order, y), exact, x, h0, 5).unwrap();
            prop_assert!(c.passes(1.8, 1e-8), "order {order} at {x}: {c:?}");
        }
    }

    #[test]
    fn differentiation_is_linear(f in expr_strategy(), g in expr_strategy(), p in -3.0f64..3.0, q in -3.0f64..3.0, x in 0.5f64..3.0) {
        let combo = Expr::Add(
            Box::new(Expr::Mul(Box::new(Expr::Const(p)), Box::new(f.clone()))),
            Box::new(Expr::Mul(Box::new(Expr::Const(q)), Box::new(g.clone()))),
        );
        let (df, dg, dc) = (differentiate(&f), differentiate(&g), differentiate(&combo));
        if let (Ok(a), Ok(b), Ok(c)) = (df.eval(x), dg.eval(x), dc.eval(x)) {
            let expected = p * a + q * b;
            let scale = (p * a).abs() + (q * b).abs();
            prop_assert!((c - expected).abs() <= 1e-12 * scale.max(1e-300), "{c} vs {expected}");
        }
    }
}

fn alpha_strategy() -> impl Strategy<Value = f64> {
    prop_oneof![Just(0.0), Just(1.0), Just(2.0), -4.0f64..4.0]
}

proptest! {
    #[test]
    fn fde_residual_is_affine(
        al in alpha_strategy(),
        c in prop::array::uniform3(-10.0f64..10.0),
        d in prop::array::uniform3(-10.0f64..10.0),
        (a, b) in (0.1f64..10.0, 0.1f64..10.0),
    ) {
        prop_assume!(a != b);
        let alpha = Alpha::new(al).unwrap();
        let iv = Interval::new(a, b).unwrap();
        let fam = |k: [f64; 3]| DifferentiableFn::from(SolutionFamily::new(alpha, k[0], k[1], k[2]));
        let sum = [c[0] + d[0], c[1] + d[1], c[2] + d[2]];
        let rf = fde_residual(&fam(c), alpha, &iv).unwrap();
        let rg = fde_residual(&fam(d), alpha, &iv).unwrap();
        let rs = fde_residual(&fam(sum), alpha, &iv).unwrap();
        let scale = fde_scale(&fam(c), &iv).unwrap() + fde_scale(&fam(d), &iv).unwrap();
        prop_assert!((rs - (rf + rg)).abs() <= 1e-12 * scale);
        // every family member, affine part included, is a solution
        prop_assert!(rs.abs() <= 1e-12 * scale);
    }

    #[test]
    fn family_has_exactly_one_abscissa_at_the_mean(
        al in alpha_strategy(),
        c1 in prop_oneof![-10.0f64..-0.1, 0.1f64..10.0],
        c2 in -10.0f64..10.0,
        (a, b) in (0.1f64..10.0, 0.1f64..10.0),
    ) {
        prop_assume!((a - b).abs() >= 0.05);
        let alpha = Alpha::new(al).unwrap();
        let iv = Interval::new(a, b).unwrap();
        let f = DifferentiableFn::from(SolutionFamily::new(alpha, c1, c2, 1.0));
        let tol = 1e-10;
        let roots = mean_value_abscissas(&f, &iv, 64, tol).unwrap();
        prop_assert_eq!(roots.len(), 1);
        let m = stolarsky_mean(alpha, &iv).unwrap();
        prop_assert!((roots[0] - m).abs() <= 10.0 * tol * iv.width());
    }

    #[test]
    fn bisection_step_bound(lo in -10.0f64..0.0, width in 0.1f64..10.0, root_frac in 0.01f64..0.99, tol in 1e-12f64..1e-3) {
        let hi = lo + width;
        let root = lo + root_frac * width;
        let f = |x: f64| Ok::<_, ()>(x - root);
        let out = bisect(f, lo, hi, lo - root, tol * width, 500).unwrap();
        prop_assert!(out.hi - out.lo <= tol * width || out.lo == out.hi);
        prop_assert!(out.steps as f64 <= (1.0 / tol).log2().ceil() + 2.0);
        prop_assert!(out.lo <= root && root <= out.hi);
    }

    #[test]
    fn implicit_solvers_hit_the_zero_set(
        al in prop_oneof![-3.0f64..-0.1, 0.1f64..0.9, 1.1f64..4.0],
        x0 in 0.5f64..2.0,
        m in 0.8f64..1.2,
        t in 0.5f64..2.0,
        r in 0.05f64..0.5,
    ) {
        let alpha = Alpha::new(al).unwrap();
        let setup = lemma_seed(alpha, x0).unwrap();
        let y = solve_phi(&setup, m * x0).unwrap();
        prop_assert!(setup.psi(m * x0, y).abs() <= 1e-12 * setup.psi_scale(m * x0, y));
        let xs = stolarsky_mean(alpha, &Interval::new(t, t + r).unwrap()).unwrap();
        let g = solve_g(alpha, xs, r, t, m * r).unwrap();
        prop_assert!(big_psi_residual(al, xs, m * r, g) <= 1e-12);
        let f = DifferentiableFn::from(SolutionFamily::new(alpha, 1.0, 0.0, 0.0));
        let p = rst_terms(alpha, &f, r, t).unwrap();
        prop_assert!((p.x0 - xs).abs() <= 1e-12 * xs);
    }
}
