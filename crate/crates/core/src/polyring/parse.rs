//! Text parser for homogeneous forms.
//!
//! Grammar (whitespace insignificant, variables `x0..xn`):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := coeff ('*' factor)* | factor ('*' factor)*
//! factor := 'x' INDEX ('^' EXP)?
//! coeff  := INTEGER | INTEGER '/' INTEGER
//! ```

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactalg::{FieldScalar, FieldTag};
use crate::polyring::{Form, Monomial};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(String),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

struct Lexer {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Lexer {
    fn tokenize(text: &str) -> Result<Lexer> {
        let bytes = text.as_bytes();
        let mut tokens = Vec::new();
        let mut i = 0usize;
        while i < bytes.len() {
            let b = bytes[i];
            match b {
                b' ' | b'\t' | b'\n' | b'\r' => i += 1,
                b'+' => {
                    tokens.push((i, Token::Plus));
                    i += 1;
                }
                b'-' => {
                    tokens.push((i, Token::Minus));
                    i += 1;
                }
                b'*' => {
                    tokens.push((i, Token::Star));
                    i += 1;
                }
                b'^' => {
                    tokens.push((i, Token::Caret));
                    i += 1;
                }
                b'/' => {
                    tokens.push((i, Token::Slash));
                    i += 1;
                }
                b'0'..=b'9' => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    tokens.push((start, Token::Int(text[start..i].to_string())));
                }
                b'x' => {
                    let start = i;
                    i += 1;
                    let digits_start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if digits_start == i {
                        return Err(Error::Syntax { pos: start, msg: "variable needs an index".into() });
                    }
                    let idx: usize = text[digits_start..i].parse().map_err(|_| Error::Syntax {
                        pos: start,
                        msg: "variable index too large".into(),
                    })?;
                    tokens.push((start, Token::Var(idx)));
                }
                _ => {
                    return Err(Error::Syntax {
                        pos: i,
                        msg: format!("unexpected character {:?}", b as char),
                    })
                }
            }
        }
        Ok(Lexer { tokens, pos: 0, end: text.len() })
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect_int(&mut self) -> Result<String> {
        match self.next() {
            Some(Token::Int(s)) => Ok(s),
            _ => Err(Error::Syntax { pos: self.here(), msg: "expected integer".into() }),
        }
    }
}

/// Parses `text` as a homogeneous form in variables `x0..xn` over the field
/// named by `tag`. The degree is inferred from the terms; mixed nonzero
/// degrees are rejected.
pub fn parse_form(text: &str, n: usize, tag: FieldTag) -> Result<Form> {
    let mut lx = Lexer::tokenize(text)?;
    let mut terms: BTreeMap<Monomial, FieldScalar> = BTreeMap::new();
    let mut degree: Option<u32> = None;

    let mut sign_negative = match lx.peek() {
        Some(Token::Minus) => {
            lx.next();
            true
        }
        Some(Token::Plus) => {
            lx.next();
            false
        }
        Some(_) => false,
        None => return Err(Error::Syntax { pos: 0, msg: "empty input".into() }),
    };

    loop {
        let (coeff, monomial) = parse_term(&mut lx, n, tag)?;
        let coeff = if sign_negative { coeff.neg() } else { coeff };
        if !coeff.is_zero() {
            match degree {
                None => degree = Some(monomial.degree()),
                Some(d) if d != monomial.degree() => {
                    return Err(Error::NotHomogeneous(d, monomial.degree()));
                }
                _ => {}
            }
            let entry = terms.entry(monomial).or_insert_with(|| tag.zero());
            *entry = entry.add(&coeff);
        }
        match lx.next() {
            None => break,
            Some(Token::Plus) => sign_negative = false,
            Some(Token::Minus) => sign_negative = true,
            Some(_) => {
                return Err(Error::Syntax { pos: lx.here(), msg: "expected '+' or '-'".into() })
            }
        }
    }

    terms.retain(|_, c| !c.is_zero());
    let degree = if terms.is_empty() { 0 } else { degree.unwrap_or(0) };
    Form::new(n, degree, terms, tag)
}

fn parse_term(lx: &mut Lexer, n: usize, tag: FieldTag) -> Result<(FieldScalar, Monomial)> {
    let mut coeff = tag.one();
    let mut exps = vec![0u32; n + 1];

    match lx.peek() {
        Some(Token::Int(_)) => {
            let digits = lx.expect_int()?;
            coeff = FieldScalar::from_decimal_str(&digits, tag)?;
            if matches!(lx.peek(), Some(Token::Slash)) {
                lx.next();
                let den_digits = lx.expect_int()?;
                let den = FieldScalar::from_decimal_str(&den_digits, tag)?;
                coeff = coeff.div(&den).map_err(|_| Error::Syntax {
                    pos: lx.here(),
                    msg: "zero denominator".into(),
                })?;
            }
            // A bare coefficient is a constant term; factors follow after '*'.
            while matches!(lx.peek(), Some(Token::Star)) {
                lx.next();
                parse_factor(lx, n, &mut exps)?;
            }
        }
        Some(Token::Var(_)) => {
            parse_factor(lx, n, &mut exps)?;
            while matches!(lx.peek(), Some(Token::Star)) {
                lx.next();
                parse_factor(lx, n, &mut exps)?;
            }
        }
        _ => {
            return Err(Error::Syntax { pos: lx.here(), msg: "expected coefficient or variable".into() })
        }
    }

    Ok((coeff, Monomial::new(exps)))
}

fn parse_factor(lx: &mut Lexer, n: usize, exps: &mut [u32]) -> Result<()> {
    match lx.next() {
        Some(Token::Var(idx)) => {
            if idx > n {
                return Err(Error::WrongVariable { index: idx, n });
            }
            let e: u32 = if matches!(lx.peek(), Some(Token::Caret)) {
                lx.next();
                let digits = lx.expect_int()?;
                digits.parse().map_err(|_| Error::Syntax {
                    pos: lx.here(),
                    msg: "exponent too large".into(),
                })?
            } else {
                1
            };
            exps[idx] += e;
            Ok(())
        }
        _ => Err(Error::Syntax { pos: lx.here(), msg: "expected variable".into() }),
    }
}
