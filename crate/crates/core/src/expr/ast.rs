use std::fmt;

use crate::lambert::{w, BranchId};
use crate::tetration::tsr;

/// A parsed real-valued expression in the single variable `x`.
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
    Exp(Box<Expr>),
    Ln(Box<Expr>),
    /// Principal branch.
    W(Box<Expr>),
    Coth(Box<Expr>),
    Tsr(Box<Expr>),
    /// A call to a function outside the grammar's vocabulary. It parses so
    /// that matching can report what is missing; it evaluates to NaN.
    Func(String, Box<Expr>),
}

impl Expr {
    pub fn constant(v: f64) -> Self {
        Expr::Const(v)
    }

    pub fn var() -> Self {
        Expr::Var
    }

    /// Value at `x`; NaN wherever a sub-expression leaves the reals.
    pub fn eval(&self, x: f64) -> f64 {
        use Expr::*;
        match self {
            Const(v) => *v,
            Var => x,
            Add(a, b) => a.eval(x) + b.eval(x),
            Sub(a, b) => a.eval(x) - b.eval(x),
            Mul(a, b) => a.eval(x) * b.eval(x),
            Div(a, b) => a.eval(x) / b.eval(x),
            Pow(a, b) => a.eval(x).powf(b.eval(x)),
            Neg(a) => -a.eval(x),
            Exp(a) => a.eval(x).exp(),
            Ln(a) => {
                let v = a.eval(x);
                if v < 0.0 {
                    f64::NAN
                } else {
                    v.ln()
                }
            }
            W(a) => w(BranchId::Principal, a.eval(x)).unwrap_or(f64::NAN),
            Coth(a) => 1.0 / a.eval(x).tanh(),
            Tsr(a) => tsr(a.eval(x)).unwrap_or(f64::NAN),
            Func(..) => f64::NAN,
        }
    }

    /// Whether `x` occurs anywhere in the tree.
    pub fn has_var(&self) -> bool {
        use Expr::*;
        match self {
            Const(_) => false,
            Var => true,
            Add(a, b) | Sub(a, b) | Mul(a, b) | Div(a, b) | Pow(a, b) => a.has_var() || b.has_var(),
            Neg(a) | Exp(a) | Ln(a) | W(a) | Coth(a) | Tsr(a) | Func(_, a) => a.has_var(),
        }
    }
}

fn write_const(f: &mut fmt::Formatter<'_>, v: f64) -> fmt::Result {
    if v == std::f64::consts::E {
        f.write_str("e")
    } else if v < 0.0 || (v == 0.0 && v.is_sign_negative()) {
        write!(f, "(-{})", -v)
    } else {
        write!(f, "{v}")
    }
}

/// Fully parenthesised infix; the output reparses to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Expr::*;
        match self {
            Const(v) => write_const(f, *v),
            Var => f.write_str("x"),
            Add(a, b) => write!(f, "({a} + {b})"),
            Sub(a, b) => write!(f, "({a} - {b})"),
            Mul(a, b) => write!(f, "({a} * {b})"),
            Div(a, b) => write!(f, "({a} / {b})"),
            Pow(a, b) => write!(f, "({a} ^ {b})"),
            Neg(a) => write!(f, "(-{a})"),
            Exp(a) => write!(f, "exp({a})"),
            Ln(a) => write!(f, "ln({a})"),
            W(a) => write!(f, "W({a})"),
            Coth(a) => write!(f, "coth({a})"),
            Tsr(a) => write!(f, "tsr({a})"),
            Func(name, a) => write!(f, "{name}({a})"),
        }
    }
}

/// Shorthand for [`Expr::to_string`].
pub fn render(e: &Expr) -> String {
    e.to_string()
}
