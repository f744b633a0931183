//! Text syntax for polynomials.
//!
//! ```text
//! poly    := ws [sign] term (sign term)* ws
//! sign    := '+' | '-'
//! term    := coef ('*' factor)* | factor ('*' factor)*
//! coef    := digits ['/' digits]
//! factor  := ident ['^' digits]
//! ident   := [A-Za-z_][A-Za-z0-9_]*
//! ```
//!
//! Whitespace is allowed between tokens. `0` denotes the zero polynomial.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{Monomial, QPoly, ZPoly};
use crate::error::{Error, Result};

pub(crate) struct Cursor<'a> {
    s: &'a [u8],
    pub(crate) pos: usize,
    src: &'a str,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Cursor {
            s: src.as_bytes(),
            pos: 0,
            src,
        }
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub(crate) fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    pub(crate) fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub(crate) fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.src))
    }

    pub(crate) fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        self.src[start..self.pos]
            .parse::<BigInt>()
            .map_err(|e| self.err(&e.to_string()))
    }

    pub(crate) fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.s.len()
            && (self.s[self.pos].is_ascii_alphabetic() || self.s[self.pos] == b'_')
        {
            self.pos += 1;
            while self.pos < self.s.len()
                && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_')
            {
                self.pos += 1;
            }
            Ok(&self.src[start..self.pos])
        } else {
            Err(self.err("expected identifier"))
        }
    }

    pub(crate) fn small(&mut self) -> Result<u32> {
        let d = self.digits()?;
        u32::try_from(d).map_err(|_| self.err("exponent too large"))
    }
}

fn parse_term(cur: &mut Cursor<'_>) -> Result<(BigRational, Monomial)> {
    let mut coeff = BigRational::one();
    let mut factors = Vec::new();
    match cur.peek() {
        Some(c) if c.is_ascii_digit() => {
            let n = cur.digits()?;
            let d = if cur.eat(b'/') {
                cur.digits()?
            } else {
                BigInt::one()
            };
            if d.is_zero() {
                return Err(cur.err("zero denominator"));
            }
            coeff = BigRational::new(n, d);
            if !cur.eat(b'*') {
                return Ok((coeff, Monomial::one()));
            }
        }
        _ => {}
    }
    loop {
        let name = cur.ident()?;
        let e = if cur.eat(b'^') { cur.small()? } else { 1 };
        factors.push((name.into(), e));
        if !cur.eat(b'*') {
            break;
        }
        if matches!(cur.peek(), Some(c) if c.is_ascii_digit()) {
            // trailing numeric factor, e.g. x*2
            let n = cur.digits()?;
            coeff *= BigRational::from_integer(n);
            if !cur.eat(b'*') {
                break;
            }
        }
    }
    Ok((coeff, Monomial::from_pairs(factors)))
}

/// Parses a polynomial with rational coefficients.
pub fn parse_qpoly(src: &str) -> Result<QPoly> {
    let mut cur = Cursor::new(src);
    if cur.at_end() {
        return Err(cur.err("empty polynomial"));
    }
    let mut p = QPoly::zero();
    let mut first = true;
    while !cur.at_end() {
        let neg = if cur.eat(b'-') {
            true
        } else if cur.eat(b'+') || first {
            false
        } else {
            return Err(cur.err("expected '+' or '-'"));
        };
        first = false;
        let (c, m) = parse_term(&mut cur)?;
        let names: Vec<String> = m.factors().iter().map(|(v, _)| v.to_string()).collect();
        p = p.with_vars(names.iter().map(String::as_str));
        p.add_term(m, if neg { -c } else { c });
    }
    Ok(p)
}

/// Parses a polynomial that must have integer coefficients.
pub fn parse_zpoly(src: &str) -> Result<ZPoly> {
    parse_qpoly(src)?
        .to_integer()
        .ok_or_else(|| Error::Parse(format!("non-integer coefficient in {src:?}")))
}

/// Parses a possibly signed integer.
pub fn parse_bigint(src: &str) -> Result<BigInt> {
    src.trim()
        .parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("not an integer: {src:?}")))
}

/// Parses `n` or `n/d`.
pub fn parse_bigrat(src: &str) -> Result<BigRational> {
    let s = src.trim();
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(parse_bigint(s)?)),
        Some((n, d)) => {
            let d = parse_bigint(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {src:?}")));
            }
            Ok(BigRational::new(parse_bigint(n)?, d))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basic_forms() {
        let p = parse_qpoly("3/6*x^2 - x + 7").unwrap();
        assert_eq!(p.to_string(), "1/2*x^2-x+7");
        assert_eq!(
            parse_qpoly("-a1*b1+a2+b2").unwrap().to_string(),
            "-a1*b1+a2+b2"
        );
        assert!(parse_qpoly("0").unwrap().is_zero());
        assert_eq!(parse_qpoly("x*y*x").unwrap().to_string(), "x^2*y");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_qpoly("").is_err());
        assert!(parse_qpoly("x +").is_err());
        assert!(parse_qpoly("1/0").is_err());
        assert!(parse_qpoly("x y").is_err());
        assert!(parse_zpoly("1/2*x").is_err());
    }

    fn arb_poly() -> impl Strategy<Value = QPoly> {
        let term = (-20i64..20, 1i64..5, 0u32..4, 0u32..3).prop_map(|(n, d, ex, ey)| {
            let m = Monomial::from_pairs(vec![("x".into(), ex), ("y".into(), ey)]);
            QPoly::monomial(BigRational::new(n.into(), d.into()), m)
        });
        prop::collection::vec(term, 0..6)
            .prop_map(|ts| ts.iter().fold(QPoly::zero(), |a, t| &a + t))
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(p in arb_poly()) {
            let back = parse_qpoly(&p.to_string()).unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
