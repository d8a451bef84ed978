//! Polynomial text syntax: `+ - * ^`, parentheses, integer and rational
//! literals (`-3/4`), identifiers optionally followed by a bracketed index
//! list (`S1[2,0]`). Multiplication must be explicit.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::{Polynomial, Scalar, VarTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} (at column {column})")]
pub struct ParseError {
    pub message: String,
    pub column: usize,
}

impl ParseError {
    fn new(message: impl Into<String>, column: usize) -> Self {
        ParseError { message: message.into(), column }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((t, col));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Num(s.parse().expect("digits")), col));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let mut name: String = chars[start..i].iter().collect();
            if i < chars.len() && chars[i] == '[' {
                let close = chars[i..]
                    .iter()
                    .position(|&c| c == ']')
                    .map(|p| p + i)
                    .ok_or_else(|| ParseError::new("unclosed `[`", i + 1))?;
                let inner: String = chars[i + 1..close].iter().filter(|c| !c.is_whitespace()).collect();
                let ok = !inner.is_empty()
                    && inner.split(',').all(|p| !p.is_empty() && p.chars().all(|c| c.is_ascii_digit()));
                if !ok {
                    return Err(ParseError::new(format!("malformed index list `[{inner}]`"), i + 1));
                }
                let normalized: Vec<String> =
                    inner.split(',').map(|p| p.parse::<u64>().expect("digits").to_string()).collect();
                name.push('[');
                name.push_str(&normalized.join(","));
                name.push(']');
                i = close + 1;
            }
            out.push((Tok::Ident(name), col));
        } else {
            return Err(ParseError::new(format!("unexpected character `{c}`"), col));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    vars: VarTable,
    end_col: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|&(_, c)| c).unwrap_or(self.end_col)
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        let out = if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let col = self.col();
            match self.peek() {
                Some(Tok::Num(n)) => {
                    let e: u32 = n.try_into().map_err(|_| ParseError::new("exponent too large", col))?;
                    self.pos += 1;
                    base.pow(e)
                }
                _ => return Err(ParseError::new("expected a nonnegative integer exponent", col)),
            }
        } else {
            base
        };
        if matches!(self.peek(), Some(Tok::Num(_) | Tok::Ident(_) | Tok::LParen)) {
            return Err(ParseError::new("implicit multiplication is not allowed; use `*`", self.col()));
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let mut value = Scalar::from_integer(n);
                if let Some(Tok::Slash) = self.peek() {
                    self.pos += 1;
                    let dcol = self.col();
                    match self.peek() {
                        Some(Tok::Num(d)) if !d.is_zero() => {
                            value /= Scalar::from_integer(d.clone());
                            self.pos += 1;
                        }
                        Some(Tok::Num(_)) => return Err(ParseError::new("zero denominator", dcol)),
                        _ => {
                            return Err(ParseError::new(
                                "`/` is only allowed inside a rational literal like `3/4`",
                                dcol,
                            ))
                        }
                    }
                }
                Ok(Polynomial::constant(self.vars.clone(), value))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if self.vars.index_of(&name).is_none() {
                    return Err(ParseError::new(format!("undeclared variable `{name}`"), col));
                }
                Ok(Polynomial::var(&self.vars, &name))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(ParseError::new("expected `)`", self.col())),
                }
            }
            Some(Tok::Slash) => Err(ParseError::new("`/` is only allowed inside a rational literal like `3/4`", col)),
            Some(t) => Err(ParseError::new(format!("unexpected token {t:?}"), col)),
            None => Err(ParseError::new("unexpected end of input", col)),
        }
    }
}

fn run(text: &str, toks: &[(Tok, usize)], vars: VarTable) -> Result<Polynomial, ParseError> {
    let mut p = Parser { toks, pos: 0, vars, end_col: text.chars().count() + 1 };
    if toks.is_empty() {
        return Err(ParseError::new("empty polynomial", 1));
    }
    let out = p.expr()?;
    if p.pos != toks.len() {
        return Err(ParseError::new("unexpected trailing input", p.col()));
    }
    Ok(out)
}

/// Parses a polynomial whose variable table consists of the identifiers in
/// order of first appearance.
pub fn parse_polynomial(text: &str) -> Result<Polynomial, ParseError> {
    let toks = tokenize(text)?;
    let names = toks.iter().filter_map(|(t, _)| match t {
        Tok::Ident(n) => Some(n.clone()),
        _ => None,
    });
    run(text, &toks, VarTable::new(names))
}

/// Parses against a fixed variable table; unknown identifiers are an error.
pub fn parse_polynomial_with(text: &str, vars: &VarTable) -> Result<Polynomial, ParseError> {
    let toks = tokenize(text)?;
    run(text, &toks, vars.clone())
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_scalar(text: &str) -> Result<Scalar, ParseError> {
    let t = text.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest.trim_start()),
        None => (false, t),
    };
    let mut parts = body.splitn(2, '/');
    let num: BigInt = parts
        .next()
        .filter(|s| !s.is_empty() && s.chars().all(|c| c.is_ascii_digit()))
        .ok_or_else(|| ParseError::new(format!("invalid rational `{t}`"), 1))?
        .parse()
        .expect("digits");
    let den: BigInt = match parts.next() {
        Some(d) if !d.is_empty() && d.chars().all(|c| c.is_ascii_digit()) => d.parse().expect("digits"),
        Some(_) => return Err(ParseError::new(format!("invalid rational `{t}`"), 1)),
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(ParseError::new("zero denominator", 1));
    }
    let v = Scalar::new(num, den);
    Ok(if neg { -v } else { v })
}
