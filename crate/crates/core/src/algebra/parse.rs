//! Literal grammar for field elements and series.
//!
//! ```text
//! sum     := ['+'|'-'] term (('+'|'-') term)*
//! term    := factor ('*' factor)* | 'O(' 't' ['^' exp] ')'
//! factor  := INT | 'g' ['^' INT] | 't' ['^' exp]
//! exp     := INT | '(' ['-'] INT ['/' INT] ')'
//! ```
//!
//! `g` is the class of `x` in `F_p[x]/(modulus)`. Exponent denominators must
//! be powers of `p`. `O(t^e)` sets the precision of a series literal.

use std::sync::Arc;

use num_rational::Ratio;

use super::gf::{GaloisField, GfElem};
use super::pexp::PExponent;
use super::series::TruncatedSeries;
use super::AlgebraError;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(i64),
    G,
    T,
    Big,
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn err(msg: impl Into<String>, span: (usize, usize)) -> AlgebraError {
    AlgebraError::Parse { msg: msg.into(), start: span.0, end: span.1 }
}

fn lex(s: &str) -> Result<Vec<(Tok, (usize, usize))>, AlgebraError> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        let tok = match c {
            ' ' | '\t' => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = s[start..i].parse::<i64>().map_err(|_| err("integer too large", (start, i)))?;
                out.push((Tok::Int(n), (start, i)));
                continue;
            }
            'g' => Tok::G,
            't' => Tok::T,
            'O' => Tok::Big,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => return Err(err(format!("unexpected character {c:?}"), (start, start + c.len_utf8()))),
        };
        i += 1;
        out.push((tok, (start, i)));
    }
    Ok(out)
}

/// A parsed monomial `c * t^e` (or a precision marker).
enum Term {
    Mono(u64, Ratio<i64>),
    Precision(Ratio<i64>, (usize, usize)),
}

struct Parser<'a> {
    toks: Vec<(Tok, (usize, usize))>,
    pos: usize,
    field: &'a GaloisField,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn span(&self) -> (usize, usize) {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or((self.end, self.end))
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), AlgebraError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(err(format!("expected {what}"), self.span()))
        }
    }

    fn int(&mut self) -> Result<i64, AlgebraError> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(n)
            }
            _ => Err(err("expected integer", self.span())),
        }
    }

    fn exponent(&mut self) -> Result<Ratio<i64>, AlgebraError> {
        if self.peek() != Some(&Tok::Caret) {
            return Ok(Ratio::from_integer(1));
        }
        self.pos += 1;
        if self.peek() != Some(&Tok::LParen) {
            return Ok(Ratio::from_integer(self.int()?));
        }
        self.pos += 1;
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let num_start = self.span().0;
        let num = self.int()?;
        let den = if self.peek() == Some(&Tok::Slash) {
            self.pos += 1;
            self.int()?
        } else {
            1
        };
        let close = self.span();
        self.expect(Tok::RParen, "')'")?;
        let mut d = den;
        while d > 1 && d % self.field.p() as i64 == 0 {
            d /= self.field.p() as i64;
        }
        if den == 0 || d != 1 {
            return Err(err(format!("denominator {den} is not a power of {}", self.field.p()), (num_start, close.1)));
        }
        Ok(Ratio::new(if neg { -num } else { num }, den))
    }

    fn term(&mut self) -> Result<Term, AlgebraError> {
        if self.peek() == Some(&Tok::Big) {
            let start = self.span().0;
            self.pos += 1;
            self.expect(Tok::LParen, "'(' after O")?;
            self.expect(Tok::T, "'t' inside O(...)")?;
            let e = self.exponent()?;
            let end = self.span().1;
            self.expect(Tok::RParen, "')'")?;
            return Ok(Term::Precision(e, (start, end)));
        }
        let f = self.field;
        let mut coeff = 1u64;
        let mut exp = Ratio::from_integer(0);
        loop {
            match self.peek() {
                Some(Tok::Int(n)) => {
                    coeff = f.mul(coeff, f.from_int(*n));
                    self.pos += 1;
                }
                Some(Tok::G) => {
                    let span = self.span();
                    if f.degree() == 1 {
                        return Err(err("g is only available in extension fields", span));
                    }
                    self.pos += 1;
                    let e = if self.peek() == Some(&Tok::Caret) {
                        self.pos += 1;
                        self.int()?
                    } else {
                        1
                    };
                    coeff = f.mul(coeff, f.pow(f.generator_raw(), e as u64));
                }
                Some(Tok::T) => {
                    self.pos += 1;
                    exp += self.exponent()?;
                }
                _ => return Err(err("expected integer, g or t", self.span())),
            }
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
            } else {
                return Ok(Term::Mono(coeff, exp));
            }
        }
    }

    fn sum(&mut self) -> Result<Vec<Term>, AlgebraError> {
        let mut out = Vec::new();
        let mut negate = false;
        if let Some(Tok::Plus | Tok::Minus) = self.peek() {
            negate = self.peek() == Some(&Tok::Minus);
            self.pos += 1;
        }
        loop {
            let t = self.term()?;
            out.push(match t {
                Term::Mono(c, e) if negate => Term::Mono(self.field.neg(c), e),
                other => other,
            });
            match self.peek() {
                None => return Ok(out),
                Some(Tok::Plus) => negate = false,
                Some(Tok::Minus) => negate = true,
                _ => return Err(err("expected '+' or '-'", self.span())),
            }
            self.pos += 1;
        }
    }
}

fn parse_terms(field: &GaloisField, s: &str) -> Result<Vec<Term>, AlgebraError> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(err("empty expression", (0, s.len())));
    }
    Parser { toks, pos: 0, field, end: s.len() }.sum()
}

/// Parses an element of `F_{p^k}` such as `g^2+1`.
pub fn parse_gf(field: &Arc<GaloisField>, s: &str) -> Result<GfElem, AlgebraError> {
    let mut acc = 0u64;
    for t in parse_terms(field, s)? {
        match t {
            Term::Mono(c, e) if e == Ratio::from_integer(0) => acc = field.add(acc, c),
            Term::Mono(..) => return Err(err("t is not allowed in a field element", (0, s.len()))),
            Term::Precision(_, span) => return Err(err("O(...) is not allowed in a field element", span)),
        }
    }
    Ok(GfElem::new(field, acc))
}

/// Parses a series literal. The precision comes from an `O(t^e)` term if
/// present, otherwise from `default_precision`.
pub fn parse_series(
    field: &Arc<GaloisField>,
    cap: u32,
    s: &str,
    default_precision: Option<PExponent>,
) -> Result<TruncatedSeries, AlgebraError> {
    let mut terms = Vec::new();
    let mut prec = None;
    for t in parse_terms(field, s)? {
        match t {
            Term::Mono(c, e) => terms.push((PExponent::from_ratio(e), GfElem::new(field, c))),
            Term::Precision(e, span) => {
                if prec.is_some() {
                    return Err(err("precision given twice", span));
                }
                prec = Some(PExponent::from_ratio(e));
            }
        }
    }
    let prec = prec
        .or(default_precision)
        .ok_or_else(|| err("no precision: add an O(t^e) term", (s.len(), s.len())))?;
    TruncatedSeries::from_terms(field, cap, &terms, prec)
}

/// Splits a comma-separated tuple literal.
pub fn split_tuple(s: &str) -> Vec<&str> {
    s.split(',').map(str::trim).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gf_make;

    #[test]
    fn parses_field_elements() {
        let f = gf_make(2, 2).unwrap();
        assert_eq!(parse_gf(&f, "g+1").unwrap().to_string(), "g+1");
        assert_eq!(parse_gf(&f, "g^2").unwrap().to_string(), "g+1");
        assert_eq!(parse_gf(&f, "1 + 1").unwrap().to_string(), "0");
    }

    #[test]
    fn parses_series_with_fractional_exponents() {
        let f = gf_make(3, 1).unwrap();
        let s = parse_series(&f, 2, "2*t^(1/9) - t^3 + O(t^5)", None).unwrap();
        assert_eq!(s.to_string(), "2*t^(1/9) + 2*t^3 + O(t^5)");
        let d = parse_series(&f, 0, "t^(-2) + 1", Some(PExponent::int(4))).unwrap();
        assert_eq!(d.val().unwrap(), PExponent::int(-2));
    }

    #[test]
    fn errors_cite_spans() {
        let f = gf_make(2, 1).unwrap();
        match parse_series(&f, 3, "t + t^(1/3)", Some(PExponent::int(4))) {
            Err(AlgebraError::Parse { start, end, .. }) => assert_eq!((start, end), (7, 11)),
            other => panic!("{other:?}"),
        }
        match parse_series(&f, 3, "t + x", Some(PExponent::int(4))) {
            Err(AlgebraError::Parse { start, end, .. }) => assert_eq!((start, end), (4, 5)),
            other => panic!("{other:?}"),
        }
        assert!(parse_series(&f, 3, "t", None).is_err());
        assert!(parse_gf(&f, "g").is_err());
    }
}
