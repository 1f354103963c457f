use thiserror::Error;

use super::ast::Expr;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: expected {}", .expected.join(" or "))]
pub struct ParseError {
    /// 1-based character position; `len + 1` means end of input.
    pub position: usize,
    pub expected: Vec<String>,
}

const KNOWN: [&str; 5] = ["exp", "ln", "W", "coth", "tsr"];

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

fn err<T>(pos: usize, expected: &[&str]) -> Result<T, ParseError> {
    Err(ParseError {
        position: pos + 1,
        expected: expected.iter().map(|s| s.to_string()).collect(),
    })
}

const OPERAND: [&str; 5] = ["number", "x", "function call", "(", "-"];

impl Parser {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    // Unary minus sits below `^`, so `-x^2` is `-(x^2)`.
    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            let exp = self.unary()?;
            return Ok(Expr::Pow(Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == '.' => self.number(),
            Some(c) if c.is_alphabetic() || c == '_' => self.ident(),
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return err(self.pos, &[")"]);
                }
                Ok(e)
            }
            _ => err(self.pos, &OPERAND),
        }
    }

    fn number(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        let digit = |p: &Parser, i: usize| p.chars.get(i).is_some_and(|c| c.is_ascii_digit());
        while digit(self, self.pos) {
            self.pos += 1;
        }
        if self.chars.get(self.pos) == Some(&'.') {
            self.pos += 1;
            while digit(self, self.pos) {
                self.pos += 1;
            }
        }
        if matches!(self.chars.get(self.pos), Some('e' | 'E')) {
            let mut i = self.pos + 1;
            if matches!(self.chars.get(i), Some('+' | '-')) {
                i += 1;
            }
            if digit(self, i) {
                self.pos = i;
                while digit(self, self.pos) {
                    self.pos += 1;
                }
            }
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        match text.parse::<f64>() {
            Ok(v) => Ok(Expr::Const(v)),
            Err(_) => err(start, &["number"]),
        }
    }

    fn ident(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_alphanumeric() || *c == '_')
        {
            self.pos += 1;
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        if self.peek() == Some('(') {
            self.pos += 1;
            let arg = self.expr()?;
            if !self.eat(')') {
                return err(self.pos, &[")"]);
            }
            let arg = Box::new(arg);
            return Ok(match name.as_str() {
                "exp" => Expr::Exp(arg),
                "ln" => Expr::Ln(arg),
                "W" => Expr::W(arg),
                "coth" => Expr::Coth(arg),
                "tsr" => Expr::Tsr(arg),
                _ => Expr::Func(name, arg),
            });
        }
        match name.as_str() {
            "x" => Ok(Expr::Var),
            "e" => Ok(Expr::Const(std::f64::consts::E)),
            "pi" => Ok(Expr::Const(std::f64::consts::PI)),
            _ if KNOWN.contains(&name.as_str()) => err(self.pos, &["("]),
            _ => err(start, &["x", "e", "pi", "function call"]),
        }
    }
}

/// Parse `y = <expr>` or a bare `<expr>`.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    // Optional `y =` prefix.
    let save = p.pos;
    if p.peek() == Some('y') {
        p.pos += 1;
        if p.eat('=') {
            // consumed
        } else {
            p.pos = save;
        }
    }
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return err(p.pos, &["operator", "end of input"]);
    }
    Ok(e)
}
