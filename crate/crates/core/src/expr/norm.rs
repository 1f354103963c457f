//! Canonical form used by the matcher.
//!
//! Sums and products are flattened and sorted, constants folded, `-u`
//! becomes `(-1)u`, `a/b` becomes `a b^{-1}`, `e^u` becomes `exp(u)`,
//! `exp(ln u)` becomes `u` and `ln(x^k)` becomes `k ln(x)`.

use std::cmp::Ordering;

use super::ast::Expr;
use crate::lambert::{w, BranchId};
use crate::tetration::tsr;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum N {
    C(f64),
    X,
    Sum(Vec<N>),
    Prod(Vec<N>),
    Pow(Box<N>, Box<N>),
    Exp(Box<N>),
    Ln(Box<N>),
    W(Box<N>),
    Coth(Box<N>),
    Tsr(Box<N>),
    Func(String, Box<N>),
}

impl N {
    fn rank(&self) -> u8 {
        match self {
            N::C(_) => 0,
            N::X => 1,
            N::Pow(..) => 2,
            N::Prod(_) => 3,
            N::Sum(_) => 4,
            N::Exp(_) => 5,
            N::Ln(_) => 6,
            N::W(_) => 7,
            N::Coth(_) => 8,
            N::Tsr(_) => 9,
            N::Func(..) => 10,
        }
    }

    pub(crate) fn konst(&self) -> Option<f64> {
        match self {
            N::C(v) => Some(*v),
            _ => None,
        }
    }

    pub(crate) fn to_expr(&self) -> Expr {
        let bx = |n: &N| Box::new(n.to_expr());
        match self {
            N::C(v) => Expr::Const(*v),
            N::X => Expr::Var,
            N::Sum(ts) => fold(ts, Expr::Add),
            N::Prod(fs) => fold(fs, Expr::Mul),
            N::Pow(a, b) => Expr::Pow(bx(a), bx(b)),
            N::Exp(a) => Expr::Exp(bx(a)),
            N::Ln(a) => Expr::Ln(bx(a)),
            N::W(a) => Expr::W(bx(a)),
            N::Coth(a) => Expr::Coth(bx(a)),
            N::Tsr(a) => Expr::Tsr(bx(a)),
            N::Func(s, a) => Expr::Func(s.clone(), bx(a)),
        }
    }
}

fn fold(items: &[N], op: fn(Box<Expr>, Box<Expr>) -> Expr) -> Expr {
    let mut it = items.iter();
    let first = it.next().map(N::to_expr).unwrap_or(Expr::Const(0.0));
    it.fold(first, |acc, n| op(Box::new(acc), Box::new(n.to_expr())))
}

fn order(a: &N, b: &N) -> Ordering {
    a.rank()
        .cmp(&b.rank())
        .then_with(|| a.to_expr().to_string().cmp(&b.to_expr().to_string()))
}

pub(crate) struct Normalizer {
    pub trace: Vec<String>,
}

impl Normalizer {
    fn note(&mut self, step: &str) {
        if !self.trace.iter().any(|s| s == step) {
            self.trace.push(step.to_string());
        }
    }

    pub(crate) fn run(&mut self, e: &Expr) -> N {
        use Expr::*;
        match e {
            Const(v) => N::C(*v),
            Var => N::X,
            Add(a, b) => {
                let (a, b) = (self.run(a), self.run(b));
                self.sum(vec![a, b])
            }
            Sub(a, b) => {
                self.note("a - b -> a + (-1)b");
                let (a, b) = (self.run(a), self.run(b));
                let nb = self.prod(vec![N::C(-1.0), b]);
                self.sum(vec![a, nb])
            }
            Mul(a, b) => {
                let (a, b) = (self.run(a), self.run(b));
                self.prod(vec![a, b])
            }
            Div(a, b) => {
                self.note("a / b -> a b^(-1)");
                let (a, b) = (self.run(a), self.run(b));
                let inv = self.pow(b, N::C(-1.0));
                self.prod(vec![a, inv])
            }
            Pow(a, b) => {
                let (a, b) = (self.run(a), self.run(b));
                self.pow(a, b)
            }
            Neg(a) => {
                self.note("-u -> (-1)u");
                let a = self.run(a);
                self.prod(vec![N::C(-1.0), a])
            }
            Exp(a) => {
                let a = self.run(a);
                self.exp(a)
            }
            Ln(a) => {
                let a = self.run(a);
                self.ln(a)
            }
            W(a) => {
                let a = self.run(a);
                self.unary(a, N::W, |v| w(BranchId::Principal, v).ok())
            }
            Coth(a) => {
                let a = self.run(a);
                self.unary(a, N::Coth, |v| Some(1.0 / v.tanh()))
            }
            Tsr(a) => {
                let a = self.run(a);
                self.unary(a, N::Tsr, |v| tsr(v).ok())
            }
            Func(s, a) => {
                let a = self.run(a);
                N::Func(s.clone(), Box::new(a))
            }
        }
    }

    fn folded(&mut self, v: Option<f64>) -> Option<N> {
        let v = v.filter(|v| v.is_finite())?;
        self.note("constant folding");
        Some(N::C(v))
    }

    fn unary(&mut self, a: N, make: fn(Box<N>) -> N, f: impl Fn(f64) -> Option<f64>) -> N {
        if let Some(c) = a.konst() {
            if let Some(n) = self.folded(f(c)) {
                return n;
            }
        }
        make(Box::new(a))
    }

    pub(crate) fn sum(&mut self, items: Vec<N>) -> N {
        let mut flat = Vec::new();
        let mut k = 0.0;
        let mut consts = 0;
        for n in items {
            match n {
                N::Sum(inner) => {
                    self.note("flatten sums");
                    for m in inner {
                        match m {
                            N::C(v) => {
                                k += v;
                                consts += 1;
                            }
                            other => flat.push(other),
                        }
                    }
                }
                N::C(v) => {
                    k += v;
                    consts += 1;
                }
                other => flat.push(other),
            }
        }
        if consts > 1 || (consts == 1 && k == 0.0 && !flat.is_empty()) {
            self.note("constant folding");
        }
        if k != 0.0 || flat.is_empty() {
            flat.push(N::C(k));
        }
        if flat.len() == 1 {
            return flat.pop().expect("one item");
        }
        flat.sort_by(order);
        N::Sum(flat)
    }

    pub(crate) fn prod(&mut self, items: Vec<N>) -> N {
        let mut flat = Vec::new();
        let mut k = 1.0;
        let mut consts = 0;
        for n in items {
            match n {
                N::Prod(inner) => {
                    self.note("flatten products");
                    for m in inner {
                        match m {
                            N::C(v) => {
                                k *= v;
                                consts += 1;
                            }
                            other => flat.push(other),
                        }
                    }
                }
                N::C(v) => {
                    k *= v;
                    consts += 1;
                }
                other => flat.push(other),
            }
        }
        if consts > 1 || (consts == 1 && k == 1.0 && !flat.is_empty()) {
            self.note("constant folding");
        }
        if k == 0.0 {
            self.note("constant folding");
            return N::C(0.0);
        }
        if k != 1.0 || flat.is_empty() {
            flat.push(N::C(k));
        }
        if flat.len() == 1 {
            return flat.pop().expect("one item");
        }
        flat.sort_by(order);
        N::Prod(flat)
    }

    pub(crate) fn pow(&mut self, a: N, b: N) -> N {
        if let (Some(x), Some(y)) = (a.konst(), b.konst()) {
            if let Some(n) = self.folded(Some(x.powf(y))) {
                return n;
            }
        }
        match b.konst() {
            Some(1.0) => {
                self.note("constant folding");
                return a;
            }
            Some(0.0) => {
                self.note("constant folding");
                return N::C(1.0);
            }
            _ => {}
        }
        if a.konst() == Some(std::f64::consts::E) {
            self.note("e^u -> exp(u)");
            return self.exp(b);
        }
        N::Pow(Box::new(a), Box::new(b))
    }

    pub(crate) fn exp(&mut self, a: N) -> N {
        if let N::Ln(u) = a {
            self.note("exp(ln(u)) -> u");
            return *u;
        }
        self.unary(a, N::Exp, |v| Some(v.exp()))
    }

    pub(crate) fn ln(&mut self, a: N) -> N {
        if let N::Pow(base, k) = &a {
            if **base == N::X {
                if let Some(k) = k.konst() {
                    self.note("ln(x^k) -> k ln(x)");
                    return self.prod(vec![N::C(k), N::Ln(Box::new(N::X))]);
                }
            }
        }
        self.unary(a, N::Ln, |v| (v > 0.0).then(|| v.ln()))
    }
}

/// Canonical form of `e` with the rewrite steps that fired.
#[derive(Debug, Clone, PartialEq)]
pub struct Normalized {
    pub expr: Expr,
    pub trace: Vec<String>,
}

pub(crate) fn normalize_n(e: &Expr) -> (N, Vec<String>) {
    let mut nz = Normalizer { trace: Vec::new() };
    let n = nz.run(e);
    (n, nz.trace)
}

pub fn normalize(e: &Expr) -> Normalized {
    let (n, trace) = normalize_n(e);
    Normalized {
        expr: n.to_expr(),
        trace,
    }
}
