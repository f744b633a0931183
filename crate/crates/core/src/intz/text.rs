//! Text and JSON forms.
//!
//! Text: `3*C(x,2)+C(x,1)-4`. Input without any `C(` is read as an
//! ordinary polynomial in one variable and converted, so `x^2-x` is also
//! accepted. JSON: `{"coeffs": {"2":"3","1":"1","0":"-4"}}`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{IntZElement, TensorElement};
use crate::arith::parse::Cursor;
use crate::arith::parse_qpoly;
use crate::error::{Error, Result};

pub fn parse_intz(src: &str) -> Result<IntZElement> {
    if !src.contains("C(") {
        let p = parse_qpoly(src)?;
        let var = match p.vars().len() {
            0 => "x".to_string(),
            1 => p.vars().iter().next().unwrap().to_string(),
            _ => return Err(Error::Parse(format!("{src:?} is not univariate"))),
        };
        return IntZElement::from_poly(&p, &var);
    }
    let mut cur = Cursor::new(src);
    let mut terms = Vec::new();
    let mut first = true;
    let mut var: Option<String> = None;
    while !cur.at_end() {
        let neg = if cur.eat(b'-') {
            true
        } else if cur.eat(b'+') || first {
            false
        } else {
            return Err(cur.err("expected '+' or '-'"));
        };
        first = false;
        let mut coeff = BigInt::one();
        let mut has_coeff = false;
        if matches!(cur.peek(), Some(c) if c.is_ascii_digit()) {
            coeff = cur.digits()?;
            has_coeff = true;
            if !cur.eat(b'*') {
                terms.push((0, if neg { -coeff } else { coeff }));
                continue;
            }
        }
        let name = cur.ident()?;
        if name != "C" || !cur.eat(b'(') {
            return Err(cur.err(if has_coeff {
                "expected C(var,n) after '*'"
            } else {
                "expected coefficient or C(var,n)"
            }));
        }
        let v = cur.ident()?.to_string();
        match &var {
            None => var = Some(v),
            Some(w) if *w != v => return Err(cur.err("mixed variables")),
            _ => {}
        }
        cur.expect(b',')?;
        let index = usize::try_from(cur.digits()?).map_err(|_| cur.err("index too large"))?;
        cur.expect(b')')?;
        terms.push((index, if neg { -coeff } else { coeff }));
    }
    if terms.is_empty() {
        return Err(Error::Parse("empty element".into()));
    }
    Ok(IntZElement::from_coeffs(terms))
}

fn write_coeff_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &BigInt,
    body: Option<String>,
) -> fmt::Result {
    let a = c.abs();
    if c.is_negative() {
        write!(f, "-")?;
    } else if !first {
        write!(f, "+")?;
    }
    match body {
        None => write!(f, "{a}"),
        Some(b) if a.is_one() => write!(f, "{b}"),
        Some(b) => write!(f, "{a}*{b}"),
    }
}

fn basis_name(var: &str, n: usize) -> Option<String> {
    (n > 0).then(|| format!("C({var},{n})"))
}

pub(super) fn fmt_intz(e: &IntZElement, var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if e.is_zero() {
        return write!(f, "0");
    }
    for (k, (n, c)) in e.coeffs().iter().enumerate() {
        write_coeff_term(f, k == 0, c, basis_name(var, *n))?;
    }
    Ok(())
}

pub(super) fn fmt_tensor(t: &TensorElement, var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if t.coeffs().is_empty() {
        return write!(f, "0");
    }
    for (k, ((m, n), c)) in t.coeffs().iter().enumerate() {
        let l = basis_name(var, *m).unwrap_or_else(|| "1".into());
        let r = basis_name(var, *n).unwrap_or_else(|| "1".into());
        write_coeff_term(f, k == 0, c, Some(format!("{l}⊗{r}")))?;
    }
    Ok(())
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct IntZJson {
    pub coeffs: BTreeMap<String, serde_json::Value>,
}

impl IntZJson {
    pub fn from_element(e: &IntZElement) -> Self {
        IntZJson {
            coeffs: e
                .coeffs()
                .iter()
                .map(|(n, c)| (n.to_string(), serde_json::Value::String(c.to_string())))
                .collect(),
        }
    }

    pub fn to_element(&self) -> Result<IntZElement> {
        let mut terms = Vec::new();
        for (k, v) in &self.coeffs {
            let n: usize = k
                .parse()
                .map_err(|_| Error::Parse(format!("bad basis index {k:?}")))?;
            terms.push((n, crate::json::bigint_from_value(v)?));
        }
        Ok(IntZElement::from_coeffs(terms))
    }
}

/// `{"coeffs": {"1,0":"1","0,1":"1"}}`.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct TensorJson {
    pub coeffs: BTreeMap<String, String>,
}

impl TensorJson {
    pub fn from_tensor(t: &TensorElement) -> Self {
        TensorJson {
            coeffs: t
                .coeffs()
                .iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|((m, n), c)| (format!("{m},{n}"), c.to_string()))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let e = parse_intz("3*C(x,2)+C(x,1)-4").unwrap();
        assert_eq!(e.coeff(2), BigInt::from(3));
        assert_eq!(e.coeff(0), BigInt::from(-4));
        assert_eq!(e.to_string(), "-4+C(x,1)+3*C(x,2)");
        assert_eq!(parse_intz(&e.to_string()).unwrap(), e);
        assert_eq!(parse_intz("x^2").unwrap().to_string(), "C(x,1)+2*C(x,2)");
        assert!(parse_intz("1/2*x").is_err());
        assert!(parse_intz("C(x,1)+C(y,2)").is_err());
        assert!(parse_intz("2*D(x,1)").is_err());
    }

    #[test]
    fn tensor_text() {
        let t = IntZElement::basis(1).comult();
        assert_eq!(t.to_string(), "1⊗C(x,1)+C(x,1)⊗1");
    }

    #[test]
    fn json_roundtrip() {
        let e = parse_intz("3*C(x,2)+C(x,1)-4").unwrap();
        let j = IntZJson::from_element(&e);
        let s = serde_json::to_string(&j).unwrap();
        assert_eq!(s, r#"{"coeffs":{"0":"-4","1":"1","2":"3"}}"#);
        let back: IntZJson = serde_json::from_str(&s).unwrap();
        assert_eq!(back.to_element().unwrap(), e);
        let numeric: IntZJson = serde_json::from_str(r#"{"coeffs":{"5":2}}"#).unwrap();
        assert_eq!(
            numeric.to_element().unwrap(),
            IntZElement::basis(5).scale(&BigInt::from(2))
        );
    }
}
