//! Text grammar for polynomials: terms joined by `+`/`-`, each term a
//! `*`-separated product of coefficients (`3`, `2/5`) and variable powers
//! (`x`, `x^3`). Whitespace is insignificant.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::ring::Ring;
use crate::error::Error;
use crate::field::Field;

/// A parse failure at a character offset of the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            d if d.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((start, Tok::Num(s.parse().expect("digits"))));
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
                return Err(ParseError { offset: start, message: format!("unexpected character `{other}`") });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { offset: self.offset(), message: message.into() })
    }

    fn term(&mut self) -> Result<(BigRational, Vec<u32>), ParseError> {
        let mut coeff = BigRational::one();
        let mut exps = vec![0u32; self.vars.len()];
        loop {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let mut q = BigRational::from_integer(n);
                    if self.peek() == Some(&Tok::Slash) {
                        self.pos += 1;
                        match self.peek().cloned() {
                            Some(Tok::Num(d)) if !d.is_zero() => {
                                self.pos += 1;
                                q /= BigRational::from_integer(d);
                            }
                            Some(Tok::Num(_)) => return self.err("zero denominator"),
                            _ => return self.err("expected denominator after `/`"),
                        }
                    }
                    coeff *= q;
                }
                Some(Tok::Ident(name)) => {
                    let Some(idx) = self.vars.iter().position(|v| *v == name) else {
                        return self.err(format!("unknown variable `{name}`"));
                    };
                    self.pos += 1;
                    let mut e = 1u32;
                    if self.peek() == Some(&Tok::Caret) {
                        self.pos += 1;
                        match self.peek().cloned() {
                            Some(Tok::Num(n)) => {
                                self.pos += 1;
                                e = u32::try_from(n).or_else(|_| self.err("exponent too large"))?;
                            }
                            _ => return self.err("expected exponent after `^`"),
                        }
                    }
                    exps[idx] += e;
                }
                None => return self.err("expected a term at end of input"),
                Some(t) => return self.err(format!("expected a term, found {t:?}")),
            }
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
            } else {
                return Ok((coeff, exps));
            }
        }
    }

    fn poly(&mut self) -> Result<Vec<(BigRational, Vec<u32>)>, ParseError> {
        let mut terms = Vec::new();
        let mut sign = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -BigRational::one()
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                BigRational::one()
            }
            _ => BigRational::one(),
        };
        loop {
            let (c, e) = self.term()?;
            terms.push((c * &sign, e));
            match self.peek() {
                None => return Ok(terms),
                Some(Tok::Plus) => sign = BigRational::one(),
                Some(Tok::Minus) => sign = -BigRational::one(),
                Some(t) => return self.err(format!("expected `+` or `-`, found {t:?}")),
            }
            self.pos += 1;
        }
    }
}

/// Parses `text` into rational-coefficient terms over the named variables.
pub fn parse_terms(vars: &[String], text: &str) -> Result<Vec<(BigRational, Monomial)>, ParseError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(ParseError { offset: 0, message: "empty polynomial".into() });
    }
    let mut p = Parser { toks, pos: 0, end: text.chars().count(), vars };
    let terms = p.poly()?;
    Ok(terms.into_iter().map(|(c, e)| (c, Monomial::new(e))).collect())
}

impl<F: Field> Polynomial<F> {
    /// Parses the text grammar into `ring`. Coefficient images that do not
    /// exist in the field (a denominator divisible by `p`) are reported.
    pub fn parse(ring: &Arc<Ring<F>>, text: &str) -> Result<Self, Error> {
        let terms = parse_terms(ring.vars(), text).map_err(|e| Error::InvalidInput(e.to_string()))?;
        Polynomial::from_rational_terms(ring, terms)
    }
}
