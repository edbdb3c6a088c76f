//! Textual literals for numbers, fields, elements, subgroups and exponent
//! vectors.
//!
//! ```text
//! rational:p/q
//! poly:[c0,c1,...,cd];box:re_lo,re_hi,im_lo,im_hi
//! field:<number literal>
//! elt:[r0,r1,...]
//! gamma:[<number literal>;<number literal>;...]
//! exp:[p1,...,pn]/m
//! ```

use num_rational::BigRational;

use crate::algnum::AlgebraicNumber;
use crate::dyadic::parse_rational;
use crate::error::{Error, Result};
use crate::fields::{FieldElement, NumberField};
use crate::interval::ComplexBox;
use crate::poly::IntPoly;
use crate::relheight::ExponentVector;

fn bad(what: &str, s: &str) -> Error {
    Error::Parse(format!("expected {what}, got '{s}'"))
}

/// Parse a number literal. Plain rationals such as `3` or `-2/5` are also
/// accepted.
pub fn parse_number(s: &str, max_bits: u64) -> Result<AlgebraicNumber> {
    let s = s.trim();
    if let Some(r) = s.strip_prefix("rational:") {
        return AlgebraicNumber::from_ratio(&parse_rational(r)?);
    }
    if let Some(rest) = s.strip_prefix("poly:") {
        let (p, b) = rest
            .split_once(";box:")
            .ok_or_else(|| bad("poly:[...];box:...", s))?;
        let f = IntPoly::parse(p)?;
        if f.degree() == 0 {
            return Err(Error::Parse(format!("constant polynomial in '{s}'")));
        }
        return AlgebraicNumber::from_poly_root(&f, &ComplexBox::parse(b)?, max_bits);
    }
    match parse_rational(s) {
        Ok(r) => AlgebraicNumber::from_ratio(&r),
        Err(Error::ZeroInput) => Err(Error::ZeroInput),
        Err(_) => Err(bad("a number literal", s)),
    }
}

/// `field:<number literal>`; `field:Q`, `Q` and `rationals` name the rationals.
pub fn parse_field(s: &str, max_bits: u64) -> Result<NumberField> {
    let s = s.trim();
    let body = s.strip_prefix("field:").unwrap_or(s);
    if matches!(body, "Q" | "rationals") {
        return Ok(NumberField::rationals());
    }
    Ok(NumberField::new(parse_number(body, max_bits)?))
}

fn bracketed<'a>(s: &'a str, what: &str) -> Result<&'a str> {
    s.trim()
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .ok_or_else(|| bad(what, s))
}

/// `elt:[r0,r1,...]` in the power basis of the field generator.
pub fn parse_element(s: &str, field: &NumberField) -> Result<FieldElement> {
    let s = s.trim();
    let body = s.strip_prefix("elt:").unwrap_or(s);
    let inner = bracketed(body, "elt:[r0,...]")?;
    let coords = inner
        .split(',')
        .map(parse_rational)
        .collect::<Result<Vec<BigRational>>>()?;
    FieldElement::new(field, coords)
}

/// `gamma:[lit;lit;...]`. A `box:` segment always belongs to the preceding
/// `poly:` segment.
pub fn parse_gamma_gens(s: &str, max_bits: u64) -> Result<Vec<AlgebraicNumber>> {
    let s = s.trim();
    let body = s.strip_prefix("gamma:").ok_or_else(|| bad("gamma:[...]", s))?;
    let inner = body
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .ok_or_else(|| bad("gamma:[...]", s))?;
    let mut items: Vec<String> = Vec::new();
    for part in inner.split(';') {
        let part = part.trim();
        if part.starts_with("box:") {
            let last = items.last_mut().ok_or_else(|| bad("poly: before box:", s))?;
            last.push(';');
            last.push_str(part);
        } else {
            items.push(part.to_string());
        }
    }
    if items.is_empty() || items.iter().any(String::is_empty) {
        return Err(bad("a nonempty generator list", s));
    }
    items.iter().map(|i| parse_number(i, max_bits)).collect()
}

/// `exp:[p1,...,pn]/m`; the `/m` suffix defaults to 1.
pub fn parse_exponent(s: &str) -> Result<ExponentVector> {
    let s = s.trim();
    let body = s.strip_prefix("exp:").unwrap_or(s);
    let (v, m) = match body.rsplit_once("]/") {
        Some((v, m)) => (format!("{v}]"), m.trim()),
        None => (body.to_string(), "1"),
    };
    let inner = bracketed(&v, "exp:[p1,...]/m")?;
    let nums = inner
        .split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|_| bad("an integer numerator", p)))
        .collect::<Result<Vec<_>>>()?;
    let m = m.parse::<u64>().map_err(|_| bad("a positive denominator", m))?;
    ExponentVector::new(nums, m)
}

/// A rational vector `[r1,...,rn]` with entries `p/q` or decimals.
pub fn parse_rational_vector(s: &str) -> Result<Vec<BigRational>> {
    bracketed(s, "[r1,...,rn]")?.split(',').map(parse_rational).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algnum::DEFAULT_MAX_BITS as MB;
    use num_bigint::BigInt;

    #[test]
    fn numbers() {
        let a = parse_number("rational:6/4", MB).unwrap();
        assert_eq!(a.minpoly(), &IntPoly::from_i64s(&[-3, 2]));
        let phi = parse_number("poly:[-1,-1,1];box:1,2,0,0", MB).unwrap();
        assert_eq!(phi.degree(), 2);
        assert_eq!(parse_number("rational:0/1", MB).unwrap_err(), Error::ZeroInput);
        assert!(matches!(parse_number("poly:[1,2", MB), Err(Error::Parse(_))));
        assert!(matches!(parse_number("banana", MB), Err(Error::Parse(_))));
        let round = parse_number(&phi.to_literal(), MB).unwrap();
        assert!(round.equals(&phi, MB).unwrap());
    }

    #[test]
    fn fields_and_elements() {
        let k = parse_field("field:poly:[-2,0,1];box:1.4,1.5,0,0", MB).unwrap();
        assert_eq!(k.degree(), 2);
        let e = parse_element("elt:[1/2,3]", &k).unwrap();
        assert_eq!(e.coords()[1], BigRational::from_integer(BigInt::from(3)));
        assert!(parse_element("elt:[1,2,3]", &k).is_err());
        assert!(parse_field("Q", MB).unwrap().is_rationals());
    }

    #[test]
    fn subgroups_and_exponents() {
        let g = parse_gamma_gens("gamma:[rational:2/1;poly:[-1,-1,1];box:1,2,0,0;3]", MB).unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g[1].degree(), 2);
        let e = parse_exponent("exp:[1,-2]/3").unwrap();
        assert_eq!(e.numerators, vec![1, -2]);
        assert_eq!(e.denom, 3);
        assert_eq!(e.to_string(), "exp:[1,-2]/3");
        assert!(parse_exponent("exp:[1]/0").is_err());
        assert_eq!(parse_rational_vector("[1/3, 0.5]").unwrap().len(), 2);
    }
}
