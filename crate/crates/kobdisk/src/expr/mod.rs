//! Scalar expressions over variables `x1..xn` with exact derivatives.
//!
//! The grammar is fixed: infix `+ - * /`, `^` for powers, unary minus, and
//! call syntax for the unary functions `exp`, `log`, `sin`, `cos`, `sqrt`.
//! Evaluation is pure; parsed expressions are immutable and can be shared
//! freely between threads.
//!
//! Derivatives come from second-order forward-mode jets ([`Jet2`]), not from
//! finite differencing, so gradients and Hessians are exact up to rounding.

mod jet;
mod parse;

pub use jet::Jet2;
pub use parse::parse_expr;

use thiserror::Error;

pub const MAX_VARS: usize = 8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExprError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { name: String, offset: usize },
    #[error("arity mismatch for `{name}` at offset {offset}: expected 1 argument")]
    ArityMismatch { name: String, offset: usize },
    #[error("too many variables: `x{index}` exceeds the supported maximum of {MAX_VARS}")]
    TooManyVariables { index: usize },
    #[error("domain error evaluating `{op}` at {arg}")]
    Domain { op: &'static str, arg: f64 },
    #[error("point has {got} coordinates but the expression uses x{need}")]
    PointTooShort { got: usize, need: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Exp,
    Log,
    Sin,
    Cos,
    Sqrt,
}

/// Abstract syntax tree of a parsed scalar expression.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    /// Zero-based variable index; `x1` parses to `Var(0)`.
    Var(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    /// Power with integer exponent, valid for any base.
    Powi(Box<Expr>, i32),
    /// General power, evaluated as exp(b*log(a)); requires a positive base.
    Pow(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Call(Func, Box<Expr>),
}

impl Expr {
    /// Highest variable index used, as a count (`x3` anywhere gives 3).
    pub fn num_vars(&self) -> usize {
        match self {
            Expr::Const(_) => 0,
            Expr::Var(i) => i + 1,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Pow(a, b) => {
                a.num_vars().max(b.num_vars())
            }
            Expr::Powi(a, _) => a.num_vars(),
            Expr::Neg(a) | Expr::Call(_, a) => a.num_vars(),
        }
    }

    /// Plain value at a point.
    pub fn eval(&self, x: &[f64]) -> Result<f64, ExprError> {
        Ok(match self {
            Expr::Const(c) => *c,
            Expr::Var(i) => {
                if *i >= x.len() {
                    return Err(ExprError::PointTooShort { got: x.len(), need: i + 1 });
                }
                x[*i]
            }
            Expr::Add(a, b) => a.eval(x)? + b.eval(x)?,
            Expr::Sub(a, b) => a.eval(x)? - b.eval(x)?,
            Expr::Mul(a, b) => a.eval(x)? * b.eval(x)?,
            Expr::Div(a, b) => {
                let d = b.eval(x)?;
                if d == 0.0 {
                    return Err(ExprError::Domain { op: "division", arg: 0.0 });
                }
                a.eval(x)? / d
            }
            Expr::Powi(a, k) => a.eval(x)?.powi(*k),
            Expr::Pow(a, b) => {
                let base = a.eval(x)?;
                if base <= 0.0 {
                    return Err(ExprError::Domain { op: "pow", arg: base });
                }
                base.powf(b.eval(x)?)
            }
            Expr::Neg(a) => -a.eval(x)?,
            Expr::Call(f, a) => {
                let v = a.eval(x)?;
                match f {
                    Func::Exp => v.exp(),
                    Func::Log => {
                        if v <= 0.0 {
                            return Err(ExprError::Domain { op: "log", arg: v });
                        }
                        v.ln()
                    }
                    Func::Sin => v.sin(),
                    Func::Cos => v.cos(),
                    Func::Sqrt => {
                        if v < 0.0 {
                            return Err(ExprError::Domain { op: "sqrt", arg: v });
                        }
                        v.sqrt()
                    }
                }
            }
        })
    }

    /// Value, gradient and (symmetric) Hessian at a point, all exact.
    pub fn eval_jet(&self, x: &[f64]) -> Result<Jet2, ExprError> {
        let n = x.len();
        if n > MAX_VARS {
            return Err(ExprError::TooManyVariables { index: n });
        }
        self.jet(x, n)
    }

    fn jet(&self, x: &[f64], n: usize) -> Result<Jet2, ExprError> {
        Ok(match self {
            Expr::Const(c) => Jet2::constant(*c, n),
            Expr::Var(i) => {
                if *i >= x.len() {
                    return Err(ExprError::PointTooShort { got: x.len(), need: i + 1 });
                }
                Jet2::variable(x[*i], *i, n)
            }
            Expr::Add(a, b) => a.jet(x, n)?.add(&b.jet(x, n)?),
            Expr::Sub(a, b) => a.jet(x, n)?.sub(&b.jet(x, n)?),
            Expr::Mul(a, b) => a.jet(x, n)?.mul(&b.jet(x, n)?),
            Expr::Div(a, b) => {
                let d = b.jet(x, n)?;
                if d.value() == 0.0 {
                    return Err(ExprError::Domain { op: "division", arg: 0.0 });
                }
                a.jet(x, n)?.mul(&d.recip())
            }
            Expr::Powi(a, k) => a.jet(x, n)?.powi(*k),
            Expr::Pow(a, b) => {
                let base = a.jet(x, n)?;
                if base.value() <= 0.0 {
                    return Err(ExprError::Domain { op: "pow", arg: base.value() });
                }
                base.ln()?.mul(&b.jet(x, n)?).exp()
            }
            Expr::Neg(a) => a.jet(x, n)?.neg(),
            Expr::Call(f, a) => {
                let v = a.jet(x, n)?;
                match f {
                    Func::Exp => v.exp(),
                    Func::Log => v.ln()?,
                    Func::Sin => v.sin(),
                    Func::Cos => v.cos(),
                    Func::Sqrt => v.sqrt()?,
                }
            }
        })
    }
}

#[cfg(test)]
mod tests;
