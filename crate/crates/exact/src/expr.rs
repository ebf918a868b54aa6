//! Recursive-descent parser for field element expressions such as
//! `1//2*sqrt2 + 3` or `-(a^3 - 2*a)/5`.

use num_bigint::BigInt;

use crate::error::AlgebraError;
use crate::field::{FieldElement, NumberField, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, AlgebraError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '*' => out.push((start, Tok::Star)),
            '^' => out.push((start, Tok::Caret)),
            '(' => out.push((start, Tok::LParen)),
            ')' => out.push((start, Tok::RParen)),
            '/' => {
                if chars.get(i + 1) == Some(&'/') {
                    i += 1;
                }
                out.push((start, Tok::Slash));
            }
            d if d.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push((start, Tok::Int(text.parse().unwrap())));
                continue;
            }
            a if a.is_alphabetic() || a == '_' => {
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(chars[start..i].iter().collect())));
                continue;
            }
            other => {
                return Err(AlgebraError::Parse(format!("unexpected character '{other}' at offset {start}")));
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a, F: Fn(&str) -> Option<FieldElement>> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    field: &'a NumberField,
    lookup: F,
}

impl<F: Fn(&str) -> Option<FieldElement>> Parser<'_, F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn err(&self, msg: &str) -> AlgebraError {
        let at = self.toks.get(self.pos).map_or("end of input".to_string(), |t| format!("offset {}", t.0));
        AlgebraError::Parse(format!("{msg} at {at}"))
    }

    fn expr(&mut self) -> Result<FieldElement, AlgebraError> {
        let k = self.field;
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = k.add(&acc, &t);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = k.sub(&acc, &t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<FieldElement, AlgebraError> {
        let k = self.field;
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let t = self.unary()?;
                    acc = k.mul(&acc, &t);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let t = self.unary()?;
                    acc = k.div(&acc, &t)?;
                }
                // implicit multiplication like `2sqrt2` or `2(1+a)`
                Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    let t = self.power()?;
                    acc = k.mul(&acc, &t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<FieldElement, AlgebraError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                let v = self.unary()?;
                Ok(self.field.neg(&v))
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<FieldElement, AlgebraError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let neg = if self.peek() == Some(&Tok::Minus) {
                self.pos += 1;
                true
            } else {
                false
            };
            let e = match self.peek() {
                Some(Tok::Int(n)) => {
                    let n: i64 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    self.pos += 1;
                    n
                }
                _ => return Err(self.err("expected integer exponent")),
            };
            return self.field.powi(&base, if neg { -e } else { e });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<FieldElement, AlgebraError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(self.field.from_rational(Rational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                (self.lookup)(&name).ok_or_else(|| AlgebraError::Parse(format!("unknown symbol '{name}'")))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.err("expected number, symbol or '('")),
        }
    }
}

/// Parses an expression, resolving identifiers with `lookup`.
pub fn parse_with<F>(field: &NumberField, s: &str, lookup: F) -> Result<FieldElement, AlgebraError>
where
    F: Fn(&str) -> Option<FieldElement>,
{
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(AlgebraError::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0, field, lookup };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

/// Parses an expression in the generator names of `field`.
pub fn parse_element(field: &NumberField, s: &str) -> Result<FieldElement, AlgebraError> {
    parse_with(field, s, |name| field.generator_by_name(name))
}
