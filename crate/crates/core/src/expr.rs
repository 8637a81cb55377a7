//! The expression grammar shared by every canonical text form:
//! identifiers `e<int>` (with `e-1` for negative indices), `t1`, `t2`, `u`, `v`,
//! `w`, `x`, `y`, `z`, `a`; rational literals; `+ - * / ^`; parentheses.
//! Multiplication must be written explicitly.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalars::{Field, Rational};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Rational),
    Sym(String),
    /// Witt basis element `e_k`.
    Gen(i64),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Gen(i64),
    Op(char),
}

fn perr(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse { offset, message: message.into() }
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |mut j: usize| {
        while j < b.len() && b[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    while i < b.len() {
        let c = b[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let j = digits(i);
            let n: num_bigint::BigInt = s[i..j].parse().map_err(|_| perr(i, "bad integer"))?;
            out.push((i, Tok::Num(Rational::from_integer(n))));
            i = j;
        } else if c == 'e'
            && i + 1 < b.len()
            && (b[i + 1].is_ascii_digit() || (b[i + 1] == b'-' && i + 2 < b.len() && b[i + 2].is_ascii_digit()))
        {
            let start = if b[i + 1] == b'-' { i + 2 } else { i + 1 };
            let j = digits(start);
            let k: i64 = s[start..j].parse().map_err(|_| perr(i, "index out of range"))?;
            out.push((i, Tok::Gen(if b[i + 1] == b'-' { -k } else { k })));
            i = j;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut j = i + 1;
            while j < b.len() && (b[j].is_ascii_alphanumeric() || b[j] == b'_') {
                j += 1;
            }
            out.push((i, Tok::Ident(s[i..j].to_string())));
            i = j;
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(perr(i, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.len, |(o, _)| *o)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = if self.eat('-') {
            Expr::Neg(Box::new(self.product()?))
        } else {
            self.eat('+');
            self.product()?
        };
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.power()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let paren = self.eat('(');
        let neg = self.eat('-');
        let off = self.offset();
        let Some(Tok::Num(n)) = self.peek().cloned() else {
            return Err(perr(off, "expected integer exponent"));
        };
        self.pos += 1;
        if paren && !self.eat(')') {
            return Err(perr(self.offset(), "expected `)`"));
        }
        let k: i64 = n
            .to_integer()
            .try_into()
            .map_err(|_| perr(off, "exponent out of range"))?;
        Ok(Expr::Pow(Box::new(base), if neg { -k } else { k }))
    }

    fn atom(&mut self) -> Result<Expr> {
        let off = self.offset();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::Gen(k)) => {
                self.pos += 1;
                Ok(Expr::Gen(k))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Expr::Sym(s))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(')') {
                    return Err(perr(self.offset(), "expected `)`"));
                }
                Ok(e)
            }
            Some(Tok::Op(c)) => Err(perr(off, format!("unexpected `{c}`"))),
            None => Err(perr(off, "unexpected end of input")),
        }
    }
}

pub fn parse(s: &str) -> Result<Expr> {
    let toks = tokenize(s)?;
    let mut p = Parser { toks, pos: 0, len: s.len() };
    let e = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(perr(p.offset(), "trailing input"));
    }
    Ok(e)
}

/// Parses a rational literal such as `-3/4`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: num_bigint::BigInt = n.parse().map_err(|_| perr(0, format!("bad rational `{s}`")))?;
    let d: num_bigint::BigInt = d.parse().map_err(|_| perr(0, format!("bad rational `{s}`")))?;
    if d.is_zero() {
        return Err(perr(0, format!("zero denominator in `{s}`")));
    }
    if d.is_negative() {
        return Err(perr(0, format!("negative denominator in `{s}`")));
    }
    Ok(Rational::new(n, d))
}

/// Interprets parsed expressions in some target domain.
pub trait Evaluator {
    type Value;

    fn scalar(&self, q: Rational) -> Result<Self::Value>;
    fn symbol(&self, name: &str, offset: usize) -> Result<Self::Value>;
    fn generator(&self, k: i64) -> Result<Self::Value> {
        Err(perr(0, format!("e{k} is not meaningful here")))
    }
    fn add(&self, x: Self::Value, y: Self::Value) -> Result<Self::Value>;
    fn neg(&self, x: Self::Value) -> Result<Self::Value>;
    fn mul(&self, x: Self::Value, y: Self::Value) -> Result<Self::Value>;
    fn pow(&self, x: Self::Value, k: i64) -> Result<Self::Value>;
    /// Division, only by scalars.
    fn div(&self, x: Self::Value, y: Self::Value) -> Result<Self::Value>;

    fn sub(&self, x: Self::Value, y: Self::Value) -> Result<Self::Value> {
        let ny = self.neg(y)?;
        self.add(x, ny)
    }

    fn eval(&self, e: &Expr) -> Result<Self::Value> {
        match e {
            Expr::Num(q) => self.scalar(q.clone()),
            Expr::Sym(s) => self.symbol(s, 0),
            Expr::Gen(k) => self.generator(*k),
            Expr::Add(x, y) => {
                let (x, y) = (self.eval(x)?, self.eval(y)?);
                self.add(x, y)
            }
            Expr::Sub(x, y) => {
                let (x, y) = (self.eval(x)?, self.eval(y)?);
                self.sub(x, y)
            }
            Expr::Mul(x, y) => {
                let (x, y) = (self.eval(x)?, self.eval(y)?);
                self.mul(x, y)
            }
            Expr::Div(x, y) => {
                let (x, y) = (self.eval(x)?, self.eval(y)?);
                self.div(x, y)
            }
            Expr::Neg(x) => {
                let x = self.eval(x)?;
                self.neg(x)
            }
            Expr::Pow(x, k) => {
                let x = self.eval(x)?;
                self.pow(x, *k)
            }
        }
    }

    fn parse_eval(&self, s: &str) -> Result<Self::Value> {
        self.eval(&parse(s)?)
    }
}

/// Scalar-only evaluation in a field `F` (the parameter is the symbol `a`).
pub struct ScalarEval<F>(std::marker::PhantomData<F>);

impl<F> Default for ScalarEval<F> {
    fn default() -> Self {
        ScalarEval(std::marker::PhantomData)
    }
}

impl<F: Field> Evaluator for ScalarEval<F> {
    type Value = F;

    fn scalar(&self, q: Rational) -> Result<F> {
        Ok(F::from_rational(q))
    }
    fn symbol(&self, name: &str, offset: usize) -> Result<F> {
        match (name, F::parameter()) {
            (crate::scalars::PARAMETER, Some(a)) => Ok(a),
            _ => Err(perr(offset, format!("unknown symbol `{name}`"))),
        }
    }
    fn add(&self, x: F, y: F) -> Result<F> {
        Ok(x + &y)
    }
    fn neg(&self, x: F) -> Result<F> {
        Ok(-x)
    }
    fn mul(&self, x: F, y: F) -> Result<F> {
        Ok(x * &y)
    }
    fn pow(&self, x: F, k: i64) -> Result<F> {
        scalar_pow(&x, k)
    }
    fn div(&self, x: F, y: F) -> Result<F> {
        x.div(&y)
    }
}

pub fn scalar_pow<F: Field>(x: &F, k: i64) -> Result<F> {
    let base = if k < 0 { x.inv()? } else { x.clone() };
    let mut acc = F::one();
    for _ in 0..k.unsigned_abs() {
        acc *= &base;
    }
    Ok(acc)
}

/// Renders `c1*m1 + c2*m2 - ...` from coefficient/monomial-text pairs.
pub(crate) fn format_terms<'a, F: Field + 'a>(terms: impl IntoIterator<Item = (&'a F, String)>) -> String {
    let mut out = String::new();
    for (c, mono) in terms {
        let (neg, body) = match c.as_rational() {
            Some(q) => {
                let neg = q.is_negative();
                let abs = q.abs();
                let body = if mono.is_empty() {
                    abs.to_string()
                } else if abs == Rational::from_integer(1.into()) {
                    mono
                } else {
                    format!("{abs}*{mono}")
                };
                (neg, body)
            }
            None if mono.is_empty() => (false, format!("({c})")),
            None => (false, format!("({c})*{mono}")),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat, RatFunc};

    #[test]
    fn tokenizes_negative_generators() {
        let e = parse("e-1*e2 - e0").unwrap();
        assert_eq!(
            e,
            Expr::Sub(
                Box::new(Expr::Mul(Box::new(Expr::Gen(-1)), Box::new(Expr::Gen(2)))),
                Box::new(Expr::Gen(0))
            )
        );
    }

    #[test]
    fn scalar_evaluation() {
        let ev = ScalarEval::<Rational>::default();
        assert_eq!(ev.parse_eval("1/2 + 1/3").unwrap(), rat(5, 6));
        assert_eq!(ev.parse_eval("(2/3)^-2").unwrap(), rat(9, 4));
        assert!(ev.parse_eval("a").is_err());
        let evq = ScalarEval::<RatFunc>::default();
        assert_eq!(evq.parse_eval("2*a/2").unwrap(), RatFunc::param());
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("-3/4").unwrap(), rat(-3, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        match parse("x * * y") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse("(x").is_err());
        assert!(parse("x y").is_err());
    }
}
