//! Recursive-descent parser for the expression grammar.
//!
//! Precedence, loosest first: `+ -`, then `* /`, then unary minus, then `^`
//! (right-associative). Offsets in errors are 1-based byte positions.

use super::{Expr, ExprError, Func, MAX_VARS};

pub fn parse_expr(source: &str) -> Result<Expr, ExprError> {
    let mut p = Parser { src: source.as_bytes(), pos: 0 };
    let e = p.parse_sum()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn syntax(&self, message: &str) -> ExprError {
        ExprError::Syntax { offset: self.pos + 1, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse_sum(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.parse_product()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.parse_product()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.parse_product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn parse_product(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.parse_unary()?;
        loop {
            if self.eat(b'*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.parse_unary()?));
            } else if self.eat(b'/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.parse_unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn parse_unary(&mut self) -> Result<Expr, ExprError> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.parse_unary()?)));
        }
        self.parse_power()
    }

    fn parse_power(&mut self) -> Result<Expr, ExprError> {
        let base = self.parse_atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        // Right-associative; a negated exponent binds to the power.
        let exp = self.parse_unary()?;
        Ok(match constant_int(&exp) {
            Some(k) => Expr::Powi(Box::new(base), k),
            None => Expr::Pow(Box::new(base), Box::new(exp)),
        })
    }

    fn parse_atom(&mut self) -> Result<Expr, ExprError> {
        match self.peek() {
            None => Err(self.syntax("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let e = self.parse_sum()?;
                if !self.eat(b')') {
                    return Err(self.syntax("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.parse_number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.parse_identifier(),
            Some(_) => Err(self.syntax("expected a number, variable, function or `(`")),
        }
    }

    fn parse_number(&mut self) -> Result<Expr, ExprError> {
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.') {
            self.pos += 1;
        }
        // Optional exponent part, e.g. 1.5e-3.
        if self.pos < self.src.len() && (self.src[self.pos] | 0x20) == b'e' {
            let mark = self.pos;
            self.pos += 1;
            if self.pos < self.src.len() && (self.src[self.pos] == b'+' || self.src[self.pos] == b'-') {
                self.pos += 1;
            }
            if self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
            } else {
                self.pos = mark;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse::<f64>().map(Expr::Const).map_err(|_| ExprError::Syntax {
            offset: start + 1,
            message: format!("invalid number `{text}`"),
        })
    }

    fn parse_identifier(&mut self) -> Result<Expr, ExprError> {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string();

        let func = match name.as_str() {
            "exp" => Some(Func::Exp),
            "log" => Some(Func::Log),
            "sin" => Some(Func::Sin),
            "cos" => Some(Func::Cos),
            "sqrt" => Some(Func::Sqrt),
            _ => None,
        };
        if let Some(f) = func {
            if !self.eat(b'(') {
                return Err(self.syntax(&format!("expected `(` after function `{name}`")));
            }
            let arg = self.parse_sum()?;
            if self.peek() == Some(b',') {
                return Err(ExprError::ArityMismatch { name, offset: self.pos + 1 });
            }
            if !self.eat(b')') {
                return Err(self.syntax("expected `)`"));
            }
            return Ok(Expr::Call(f, Box::new(arg)));
        }

        if let Some(rest) = name.strip_prefix('x') {
            if let Ok(index) = rest.parse::<usize>() {
                if index >= 1 {
                    if index > MAX_VARS {
                        return Err(ExprError::TooManyVariables { index });
                    }
                    return Ok(Expr::Var(index - 1));
                }
            }
        }
        Err(ExprError::UnknownIdentifier { name, offset: start + 1 })
    }
}

/// Recognizes constant integer exponents (possibly negated) so `a^2` stays
/// valid for negative bases.
fn constant_int(e: &Expr) -> Option<i32> {
    match e {
        Expr::Const(c) if c.fract() == 0.0 && c.abs() <= 1e6 => Some(*c as i32),
        Expr::Neg(inner) => constant_int(inner).map(|k| -k),
        _ => None,
    }
}
