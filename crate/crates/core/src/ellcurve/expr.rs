//! Integer polynomial expressions in single-letter variables, as written in
//! printed tables: `2^2(b^2 - 2b - 1)(b^2 + 2b - 1)`. Juxtaposition is
//! multiplication.

use std::collections::BTreeSet;
use std::str::FromStr;

use num_bigint::BigInt;

use super::Ring;
use crate::error::CurveError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Const(BigInt),
    Var(char),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn parse(src: &str) -> Result<Self, CurveError> {
        let mut p = Parser { src: src.as_bytes(), pos: 0 };
        let e = p.sum()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }

    pub fn variables(&self) -> BTreeSet<char> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<char>) {
        match self {
            Expr::Const(_) => {}
            Expr::Var(c) => {
                out.insert(*c);
            }
            Expr::Add(x, y) | Expr::Sub(x, y) | Expr::Mul(x, y) => {
                x.collect_vars(out);
                y.collect_vars(out);
            }
            Expr::Neg(x) | Expr::Pow(x, _) => x.collect_vars(out),
        }
    }

    /// Evaluates in the ring of `proto`, looking variables up in `env`.
    pub fn eval<R: Ring>(&self, proto: &R, env: &dyn Fn(char) -> Option<R>) -> Result<R, CurveError> {
        Ok(match self {
            Expr::Const(n) => proto.from_int(n),
            Expr::Var(c) => env(*c).ok_or_else(|| CurveError::UnknownVariable(c.to_string()))?,
            Expr::Add(x, y) => x.eval(proto, env)?.add(&y.eval(proto, env)?),
            Expr::Sub(x, y) => x.eval(proto, env)?.sub(&y.eval(proto, env)?),
            Expr::Mul(x, y) => x.eval(proto, env)?.mul(&y.eval(proto, env)?),
            Expr::Neg(x) => x.eval(proto, env)?.neg(),
            Expr::Pow(x, e) => x.eval(proto, env)?.pow(*e),
        })
    }
}

impl FromStr for Expr {
    type Err = CurveError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Expr::parse(s)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> CurveError {
        CurveError::Parse { pos: self.pos, msg: msg.to_string() }
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

    fn sum(&mut self) -> Result<Expr, CurveError> {
        let mut acc = self.product()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = Expr::Add(Box::new(acc), Box::new(self.product()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = Expr::Sub(Box::new(acc), Box::new(self.product()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Expr, CurveError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
                }
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() => {
                    acc = Expr::Mul(Box::new(acc), Box::new(self.power()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, CurveError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, CurveError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
            let e = digits.parse::<u32>().map_err(|_| self.err("expected a nonnegative exponent"))?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, CurveError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                Ok(Expr::Const(digits.parse().expect("digits")))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.pos += 1;
                Ok(Expr::Var(c as char))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}
