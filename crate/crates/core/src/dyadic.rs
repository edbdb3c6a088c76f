//! Dyadic rationals `m * 2^e` with directed rounding.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Rounding direction for inexact dyadic operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    /// Toward negative infinity.
    Down,
    /// Toward positive infinity.
    Up,
}

impl Round {
    pub fn flip(self) -> Round {
        match self {
            Round::Down => Round::Up,
            Round::Up => Round::Down,
        }
    }
}

/// An exact dyadic rational `mant * 2^exp`.
///
/// The representation is canonical: the mantissa is odd, or zero with
/// exponent zero. Structural equality is therefore numeric equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

/// Floor division by `2^k`.
pub(crate) fn shr_floor(x: &BigInt, k: u64) -> BigInt {
    if k == 0 {
        return x.clone();
    }
    if x.sign() == Sign::Minus {
        let m = -x;
        let q: BigInt = (&m - 1u32) >> k;
        -(q + 1u32)
    } else {
        x >> k
    }
}

/// Ceiling division by `2^k`.
pub(crate) fn shr_ceil(x: &BigInt, k: u64) -> BigInt {
    -shr_floor(&-x, k)
}

fn shr_round(x: &BigInt, k: u64, mode: Round) -> BigInt {
    match mode {
        Round::Down => shr_floor(x, k),
        Round::Up => shr_ceil(x, k),
    }
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Dyadic {
        if mant.is_zero() {
            return Dyadic::zero();
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        if tz == 0 {
            Dyadic { mant, exp }
        } else {
            Dyadic {
                mant: mant >> tz,
                exp: exp + tz as i64,
            }
        }
    }

    pub fn zero() -> Dyadic {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Dyadic {
        Dyadic::from(1i64)
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Dyadic {
        Dyadic {
            mant: BigInt::one(),
            exp: e,
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    /// Multiply by `2^k`.
    pub fn shl(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    /// Number of mantissa bits.
    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Floor of log2 |x|, i.e. |x| in [2^k, 2^(k+1)). None for zero.
    pub fn log2_floor(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + self.mant.bits() as i64 - 1)
        }
    }

    /// Round to at most `prec` mantissa bits in direction `mode`.
    pub fn round(&self, prec: u64, mode: Round) -> Dyadic {
        let b = self.mant.bits();
        if b <= prec {
            return self.clone();
        }
        let k = b - prec;
        Dyadic::new(shr_round(&self.mant, k, mode), self.exp + k as i64)
    }

    /// Round to a multiple of `2^e` in direction `mode`.
    pub fn round_to_exp(&self, e: i64, mode: Round) -> Dyadic {
        if self.exp >= e {
            return self.clone();
        }
        let k = (e - self.exp) as u64;
        Dyadic::new(shr_round(&self.mant, k, mode), e)
    }

    /// Floor or ceiling as an integer.
    pub fn to_integer(&self, mode: Round) -> BigInt {
        if self.exp >= 0 {
            &self.mant << (self.exp as u64)
        } else {
            shr_round(&self.mant, (-self.exp) as u64, mode)
        }
    }

    /// `self / rhs` rounded to `prec` bits. Panics on division by zero.
    pub fn div(&self, rhs: &Dyadic, prec: u64, mode: Round) -> Dyadic {
        assert!(!rhs.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let sa = self.mant.bits() as i64;
        let sb = rhs.mant.bits() as i64;
        let s = (prec as i64 + sb - sa + 2).max(0) as u64;
        let (num, den) = if rhs.mant.is_negative() {
            (-(&self.mant << s), -&rhs.mant)
        } else {
            (&self.mant << s, rhs.mant.clone())
        };
        let (q, r) = num.div_mod_floor(&den);
        let q = if mode == Round::Up && !r.is_zero() { q + 1 } else { q };
        Dyadic::new(q, self.exp - rhs.exp - s as i64).round(prec, mode)
    }

    /// Square root rounded to `prec` bits. Requires `self >= 0`.
    pub fn sqrt(&self, prec: u64, mode: Round) -> Dyadic {
        assert!(!self.is_negative(), "sqrt of negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let mut m = self.mant.clone();
        let mut e = self.exp;
        if e.rem_euclid(2) != 0 {
            m <<= 1u32;
            e -= 1;
        }
        let want = 2 * prec as i64 + 4 - m.bits() as i64;
        let shift = if want > 0 { (want + (want & 1)) as u64 } else { 0 };
        let scaled = &m << shift;
        let r = scaled.sqrt();
        let r = if mode == Round::Up && &r * &r != scaled {
            r + 1
        } else {
            r
        };
        Dyadic::new(r, (e - shift as i64) / 2).round(prec, mode)
    }

    pub fn from_ratio(r: &BigRational, prec: u64, mode: Round) -> Dyadic {
        let den = r.denom();
        if den.is_one() {
            return Dyadic::new(r.numer().clone(), 0);
        }
        let tz = den.trailing_zeros().unwrap_or(0);
        if (den >> tz).is_one() {
            return Dyadic::new(r.numer().clone(), -(tz as i64));
        }
        Dyadic::new(r.numer().clone(), 0).div(&Dyadic::new(den.clone(), 0), prec, mode)
    }

    pub fn to_ratio(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << (self.exp as u64))
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << ((-self.exp) as u64))
        }
    }

    /// Nearest-ish f64 (truncated mantissa), saturating to +-inf.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let b = self.mant.bits();
        let (m, e) = if b > 60 {
            let k = b - 60;
            (shr_floor(&self.mant, k), self.exp + k as i64)
        } else {
            (self.mant.clone(), self.exp)
        };
        let mf = m.to_f64().unwrap_or(0.0);
        if e > 2000 {
            return mf.signum() * f64::INFINITY;
        }
        if e < -2200 {
            return 0.0;
        }
        // Apply the exponent in halves so intermediate powers stay finite.
        let e1 = (e / 2) as i32;
        let e2 = e as i32 - e1;
        mf * 2f64.powi(e1) * 2f64.powi(e2)
    }

    /// Exact conversion from a finite f64.
    pub fn from_f64(x: f64) -> Dyadic {
        assert!(x.is_finite(), "non-finite f64");
        if x == 0.0 {
            return Dyadic::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let exp_bits = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if exp_bits == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), exp_bits - 1075)
        };
        Dyadic::new(BigInt::from(m) * sign, e)
    }

    pub fn min(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn max(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }
}

impl From<i64> for Dyadic {
    fn from(v: i64) -> Dyadic {
        Dyadic::new(BigInt::from(v), 0)
    }
}

impl From<BigInt> for Dyadic {
    fn from(v: BigInt) -> Dyadic {
        Dyadic::new(v, 0)
    }
}

impl From<&BigInt> for Dyadic {
    fn from(v: &BigInt) -> Dyadic {
        Dyadic::new(v.clone(), 0)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Dyadic) -> Ordering {
        let sa = self.signum();
        let sb = other.signum();
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        // Same sign: compare magnitudes by top bit first.
        let la = self.log2_floor().unwrap();
        let lb = other.log2_floor().unwrap();
        let mag = if la != lb {
            la.cmp(&lb)
        } else {
            let e = self.exp.min(other.exp);
            let ma = self.mant.abs() << ((self.exp - e) as u64);
            let mb = other.mant.abs() << ((other.exp - e) as u64);
            ma.cmp(&mb)
        };
        if sa > 0 {
            mag
        } else {
            mag.reverse()
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Dyadic) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(rhs.exp);
        let a = &self.mant << ((self.exp - e) as u64);
        let b = &rhs.mant << ((rhs.exp - e) as u64);
        Dyadic::new(a + b, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() || rhs.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            mant: &self.mant * &rhs.mant,
            exp: self.exp + rhs.exp,
        }
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            mant: -self.mant,
            exp: self.exp,
        }
    }
}

impl fmt::Display for Dyadic {
    /// Formats as `m*2^e`, or as a bare integer when that is short.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if (0..=64).contains(&self.exp) {
            write!(f, "{}", &self.mant << (self.exp as u64))
        } else {
            write!(f, "{}*2^{}", self.mant, self.exp)
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (~{:e})", self, self.to_f64())
    }
}

/// Parse an exact rational from `p`, `p/q`, a decimal like `-1.25e-3`, or `m*2^e`.
pub fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad number '{s}'"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((m, e)) = s.split_once("*2^") {
        let m = BigInt::from_str(m.trim()).map_err(|_| bad())?;
        let e = i64::from_str(e.trim()).map_err(|_| bad())?;
        return Ok(Dyadic::new(m, e).to_ratio());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::ZeroInput);
        }
        return Ok(BigRational::new(p, q));
    }
    let (body, exp10) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], i64::from_str(&s[i + 1..]).map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, body) = match body.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, body.strip_prefix('+').unwrap_or(body)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| bad())?;
    if neg {
        num = -num;
    }
    let scale = exp10 - frac_part.len() as i64;
    let ten = BigInt::from(10);
    Ok(if scale >= 0 {
        BigRational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(num, num_traits::pow(ten, (-scale) as usize))
    })
}

/// Parse a dyadic endpoint. Non-dyadic decimals are rounded in direction `mode`.
pub fn parse_dyadic(s: &str, mode: Round) -> Result<Dyadic, Error> {
    let r = parse_rational(s)?;
    Ok(Dyadic::from_ratio(&r, 96, mode))
}

impl serde::Serialize for Dyadic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Dyadic {
    type Err = Error;
    fn from_str(s: &str) -> Result<Dyadic, Error> {
        let r = parse_rational(s)?;
        let d = Dyadic::from_ratio(&r, 64, Round::Down);
        if d.to_ratio() != r {
            return Err(Error::Parse(format!("'{s}' is not a dyadic rational")));
        }
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(m: i64, e: i64) -> Dyadic {
        Dyadic::new(BigInt::from(m), e)
    }

    #[test]
    fn canonical_form() {
        assert_eq!(d(4, 0), d(1, 2));
        assert_eq!(d(0, 7), Dyadic::zero());
        assert_eq!(d(-6, -1), d(-3, 0));
    }

    #[test]
    fn floor_shift_negative() {
        assert_eq!(shr_floor(&BigInt::from(-5), 1), BigInt::from(-3));
        assert_eq!(shr_ceil(&BigInt::from(-5), 1), BigInt::from(-2));
        assert_eq!(shr_floor(&BigInt::from(5), 1), BigInt::from(2));
        assert_eq!(shr_ceil(&BigInt::from(5), 1), BigInt::from(3));
    }

    #[test]
    fn ordering() {
        assert!(d(1, -1) < d(1, 0));
        assert!(d(-3, 0) < d(-1, 1));
        assert!(d(3, -2) > d(-7, 3));
        assert_eq!(d(3, 1).cmp(&d(6, 0)), Ordering::Equal);
    }

    #[test]
    fn directed_division() {
        let one = Dyadic::one();
        let three = Dyadic::from(3);
        let lo = one.div(&three, 40, Round::Down);
        let hi = one.div(&three, 40, Round::Up);
        assert!(lo < hi);
        assert!(&three * &lo < one);
        assert!(&three * &hi > one);
        let nlo = one.div(&(-&three), 40, Round::Down);
        assert_eq!(nlo, -hi);
    }

    #[test]
    fn directed_sqrt() {
        let two = Dyadic::from(2);
        let lo = two.sqrt(80, Round::Down);
        let hi = two.sqrt(80, Round::Up);
        assert!(&lo * &lo <= two && &hi * &hi >= two);
        assert!((&hi - &lo) <= Dyadic::pow2(-75));
        assert_eq!(Dyadic::from(9).sqrt(10, Round::Up), Dyadic::from(3));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("1.5").unwrap(), BigRational::new(3.into(), 2.into()));
        assert_eq!(parse_rational("-3/6").unwrap(), BigRational::new((-1).into(), 2.into()));
        assert_eq!(parse_rational("3*2^-2").unwrap(), BigRational::new(3.into(), 4.into()));
        assert_eq!(parse_rational("1e-2").unwrap(), BigRational::new(1.into(), 100.into()));
        assert_eq!(d(3, -2).to_string(), "3*2^-2");
        assert_eq!(Dyadic::from_str("3*2^-2").unwrap(), d(3, -2));
        assert!(Dyadic::from_str("0.1").is_err());
        let lo = parse_dyadic("0.1", Round::Down).unwrap();
        let hi = parse_dyadic("0.1", Round::Up).unwrap();
        let tenth = BigRational::new(1.into(), 10.into());
        assert!(lo.to_ratio() < tenth && hi.to_ratio() > tenth);
    }

    #[test]
    fn f64_roundtrip() {
        for x in [1.0, -0.375, 1e-300, 12345.678, f64::MIN_POSITIVE / 4.0] {
            assert_eq!(Dyadic::from_f64(x).to_f64(), x);
        }
    }
}
