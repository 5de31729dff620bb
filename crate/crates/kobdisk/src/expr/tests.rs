use super::*;

fn ev(src: &str, x: &[f64]) -> f64 {
    parse_expr(src).unwrap().eval(x).unwrap()
}

#[test]
fn polynomial_arithmetic() {
    assert_eq!(ev("x1*x1 + x2", &[2.0, 3.0]), 7.0);
}

#[test]
fn poincare_factor_at_origin() {
    assert_eq!(ev("4/((1 - x1*x1 - x2*x2)^2)", &[0.0, 0.0]), 4.0);
}

#[test]
fn unbalanced_paren_reports_offset() {
    let err = parse_expr("log(x1").unwrap_err();
    match err {
        ExprError::Syntax { offset, .. } => assert_eq!(offset, 7),
        other => panic!("expected syntax error, got {other:?}"),
    }
}

#[test]
fn unknown_identifier() {
    let err = parse_expr("x1 + foo").unwrap_err();
    assert!(matches!(err, ExprError::UnknownIdentifier { ref name, offset: 6 } if name == "foo"));
}

#[test]
fn arity_mismatch() {
    let err = parse_expr("exp(x1, x2)").unwrap_err();
    assert!(matches!(err, ExprError::ArityMismatch { ref name, .. } if name == "exp"));
}

#[test]
fn bilinear_jet() {
    let e = parse_expr("x1*x2").unwrap();
    let j = e.eval_jet(&[3.0, 5.0]).unwrap();
    assert_eq!(j.value(), 15.0);
    assert_eq!(j.gradient(), &[5.0, 3.0]);
    assert_eq!(j.hess(0, 0), 0.0);
    assert_eq!(j.hess(0, 1), 1.0);
    assert_eq!(j.hess(1, 0), 1.0);
    assert_eq!(j.hess(1, 1), 0.0);
}

#[test]
fn exp_jet_at_zero() {
    let e = parse_expr("exp(x1)").unwrap();
    let j = e.eval_jet(&[0.0]).unwrap();
    assert_eq!(j.value(), 1.0);
    assert_eq!(j.gradient(), &[1.0]);
    assert_eq!(j.hess(0, 0), 1.0);
}

#[test]
fn power_with_negative_base() {
    assert_eq!(ev("x1^2", &[-3.0]), 9.0);
    assert_eq!(ev("x1^3", &[-2.0]), -8.0);
}

#[test]
fn domain_errors() {
    assert!(matches!(ev_err("log(x1)", &[-1.0]), ExprError::Domain { op: "log", .. }));
    assert!(matches!(ev_err("1/x1", &[0.0]), ExprError::Domain { op: "division", .. }));
    assert!(matches!(ev_err("sqrt(x1)", &[-4.0]), ExprError::Domain { op: "sqrt", .. }));
}

fn ev_err(src: &str, x: &[f64]) -> ExprError {
    parse_expr(src).unwrap().eval(x).unwrap_err()
}

/// Central finite differences of `eval` as the independent check on the jet.
fn fd_gradient(e: &Expr, x: &[f64], step: f64) -> Vec<f64> {
    (0..x.len())
        .map(|i| {
            let mut xp = x.to_vec();
            let mut xm = x.to_vec();
            xp[i] += step;
            xm[i] -= step;
            (e.eval(&xp).unwrap() - e.eval(&xm).unwrap()) / (2.0 * step)
        })
        .collect()
}

fn fd_hessian(e: &Expr, x: &[f64], step: f64) -> Vec<Vec<f64>> {
    (0..x.len())
        .map(|i| {
            let mut xp = x.to_vec();
            let mut xm = x.to_vec();
            xp[i] += step;
            xm[i] -= step;
            let gp = fd_gradient(e, &xp, step);
            let gm = fd_gradient(e, &xm, step);
            (0..x.len()).map(|j| (gp[j] - gm[j]) / (2.0 * step)).collect()
        })
        .collect()
}

#[test]
fn poincare_gradient_matches_finite_difference() {
    let e = parse_expr("4/((1-x1^2-x2^2)^2)").unwrap();
    let x = [0.5, 0.0];
    let j = e.eval_jet(&x).unwrap();
    let fd = fd_gradient(&e, &x, 1e-5);
    for i in 0..2 {
        let scale = fd[i].abs().max(1.0);
        assert!(
            (j.gradient()[i] - fd[i]).abs() / scale < 1e-6,
            "component {i}: jet {} vs fd {}",
            j.gradient()[i],
            fd[i]
        );
    }
}

#[test]
fn parser_never_panics_on_garbage() {
    for src in ["", "((", "1+", "x0", "x1x", "sin", "1..2", "^2", "log(,)", "x1 + * x2", "🦀"] {
        let _ = parse_expr(src);
    }
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    /// Random polynomials of degree <= 4 in two variables, built as ASTs.
    fn poly_strategy() -> impl Strategy<Value = Expr> {
        let coeff = -4.0..4.0f64;
        proptest::collection::vec((coeff, 0u32..3, 0u32..3), 1..6).prop_map(|terms| {
            let mut acc = Expr::Const(0.0);
            for (c, i, j) in terms {
                let mut term = Expr::Const(c);
                for _ in 0..i {
                    term = Expr::Mul(Box::new(term), Box::new(Expr::Var(0)));
                }
                for _ in 0..j {
                    term = Expr::Mul(Box::new(term), Box::new(Expr::Var(1)));
                }
                acc = Expr::Add(Box::new(acc), Box::new(term));
            }
            acc
        })
    }

    proptest! {
        #[test]
        fn jet_matches_central_differences(e in poly_strategy(), x0 in -1.0..1.0f64, x1 in -1.0..1.0f64) {
            let x = [x0, x1];
            let j = e.eval_jet(&x).unwrap();
            let fd_g = fd_gradient(&e, &x, 1e-5);
            let fd_h = fd_hessian(&e, &x, 1e-4);
            for i in 0..2 {
                let scale = fd_g[i].abs().max(1.0);
                prop_assert!((j.gradient()[i] - fd_g[i]).abs() / scale < 1e-6);
                for k in 0..2 {
                    let scale = fd_h[i][k].abs().max(1.0);
                    prop_assert!((j.hess(i, k) - fd_h[i][k]).abs() / scale < 1e-4);
                    prop_assert_eq!(j.hess(i, k), j.hess(k, i));
                }
            }
        }

        #[test]
        fn parse_is_total(src in "[x0-9+*/^() .-]{0,24}") {
            let _ = parse_expr(&src);
        }
    }
}
