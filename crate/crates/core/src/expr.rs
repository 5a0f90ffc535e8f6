//! Small infix expression parser shared by element literals and
//! Grothendieck-ring expressions.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(BigInt),
    Var(String),
    Call(String, BigInt),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token::Num(s.parse().map_err(|_| Error::parse(format!("bad integer {s}")))?));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else if c == '\u{2212}' {
            out.push(Token::Op('-'));
            i += 1;
        } else {
            return Err(Error::parse(format!("unexpected character {c:?} in {src:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn peek_at(&self, k: usize) -> Option<&Token> {
        self.tokens.get(self.pos + k)
    }

    fn eat_op(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat_op('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat_op('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat_op('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat_op('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else if matches!(self.peek(), Some(Token::Num(_)) | Some(Token::Ident(_)) | Some(Token::Op('('))) {
                // implicit product, as in `5t` or `2(1+t)`
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat_op('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat_op('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if self.eat_op('^') {
            let neg = self.eat_op('-');
            let paren = !neg && self.eat_op('(');
            let neg = neg || (paren && self.eat_op('-'));
            let e = match self.peek().cloned() {
                Some(Token::Num(n)) => {
                    self.pos += 1;
                    n.to_i64().ok_or_else(|| Error::parse("exponent too large"))?
                }
                _ => return Err(Error::parse("exponent must be an integer literal")),
            };
            if paren && !self.eat_op(')') {
                return Err(Error::parse("missing ')' after exponent"));
            }
            return Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Token::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                let call = matches!(
                    (self.peek(), self.peek_at(1), self.peek_at(2)),
                    (Some(Token::Op('(')), Some(Token::Num(_)), Some(Token::Op(')')))
                );
                if call {
                    let arg = match &self.tokens[self.pos + 1] {
                        Token::Num(n) => n.clone(),
                        _ => unreachable!(),
                    };
                    self.pos += 3;
                    Ok(Expr::Call(name, arg))
                } else {
                    Ok(Expr::Var(name))
                }
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat_op(')') {
                    return Err(Error::parse("missing ')'"));
                }
                Ok(e)
            }
            Some(t) => Err(Error::parse(format!("unexpected token {t:?}"))),
            None => Err(Error::parse("unexpected end of expression")),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let tokens = tokenize(src)?;
    if tokens.is_empty() {
        return Err(Error::parse("empty expression"));
    }
    let mut p = Parser { tokens, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::parse(format!("trailing input in {src:?}")));
    }
    Ok(e)
}

/// Interprets an [`Expr`] in some ring.
pub trait Evaluator {
    type Value: Clone;

    fn num(&self, n: &BigInt) -> Result<Self::Value>;
    fn var(&self, name: &str) -> Result<Self::Value>;
    fn call(&self, name: &str, arg: &BigInt) -> Result<Self::Value>;
    fn add(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn sub(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn mul(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn neg(&self, a: Self::Value) -> Result<Self::Value>;
    fn div(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;

    fn pow(&self, a: Self::Value, e: i64) -> Result<Self::Value> {
        let mut acc = self.num(&BigInt::from(1))?;
        for _ in 0..e.unsigned_abs() {
            acc = self.mul(acc, a.clone())?;
        }
        if e < 0 {
            let one = self.num(&BigInt::from(1))?;
            acc = self.div(one, acc)?;
        }
        Ok(acc)
    }

    fn eval(&self, e: &Expr) -> Result<Self::Value> {
        match e {
            Expr::Num(n) => self.num(n),
            Expr::Var(v) => self.var(v),
            Expr::Call(f, a) => self.call(f, a),
            Expr::Neg(a) => {
                let a = self.eval(a)?;
                self.neg(a)
            }
            Expr::Add(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                self.add(a, b)
            }
            Expr::Sub(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                self.sub(a, b)
            }
            Expr::Mul(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                self.mul(a, b)
            }
            Expr::Div(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                self.div(a, b)
            }
            Expr::Pow(a, k) => {
                let a = self.eval(a)?;
                self.pow(a, *k)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(k: i64) -> Box<Expr> {
        Box::new(Expr::Num(BigInt::from(k)))
    }

    #[test]
    fn precedence_and_implicit_products() {
        let e = parse("1 + 2*t^3").unwrap();
        let t3 = Expr::Pow(Box::new(Expr::Var("t".into())), 3);
        assert_eq!(e, Expr::Add(n(1), Box::new(Expr::Mul(n(2), Box::new(t3.clone())))));
        assert_eq!(parse("2t^3").unwrap(), Expr::Mul(n(2), Box::new(t3)));
    }

    #[test]
    fn calls_and_negative_exponents() {
        assert_eq!(parse("Pn(3)").unwrap(), Expr::Call("Pn".into(), BigInt::from(3)));
        assert_eq!(parse("t^-2").unwrap(), Expr::Pow(Box::new(Expr::Var("t".into())), -2));
        assert_eq!(parse("t^(-2)").unwrap(), Expr::Pow(Box::new(Expr::Var("t".into())), -2));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse("").is_err());
        assert!(parse("1 +").is_err());
        assert!(parse("(1").is_err());
        assert!(parse("1 $ 2").is_err());
        assert!(parse("t^x").is_err());
    }
}
