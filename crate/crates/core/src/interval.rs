//! Outward-rounded real intervals and rectangular complex boxes over dyadics.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::dyadic::{parse_dyadic, Dyadic, Round};
use crate::error::{Error, Result};

/// A closed interval `[lo, hi]` with dyadic endpoints.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Interval {
        debug_assert!(lo <= hi, "inverted interval");
        Interval { lo, hi }
    }

    pub fn point(x: Dyadic) -> Interval {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn zero() -> Interval {
        Interval::point(Dyadic::zero())
    }

    pub fn from_int(n: &BigInt) -> Interval {
        Interval::point(Dyadic::from(n))
    }

    pub fn from_i64(n: i64) -> Interval {
        Interval::point(Dyadic::from(n))
    }

    pub fn from_ratio(r: &BigRational, prec: u64) -> Interval {
        Interval {
            lo: Dyadic::from_ratio(r, prec, Round::Down),
            hi: Dyadic::from_ratio(r, prec, Round::Up),
        }
    }

    pub fn width(&self) -> Dyadic {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Dyadic {
        (&self.lo + &self.hi).shl(-1)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn intersects(&self, o: &Interval) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    /// True if every element is strictly positive.
    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn hull(&self, o: &Interval) -> Interval {
        Interval {
            lo: Dyadic::min(&self.lo, &o.lo),
            hi: Dyadic::max(&self.hi, &o.hi),
        }
    }

    /// Elementwise maximum of two intervals, i.e. an enclosure of `max(x, y)`.
    pub fn max(&self, o: &Interval) -> Interval {
        Interval {
            lo: Dyadic::max(&self.lo, &o.lo),
            hi: Dyadic::max(&self.hi, &o.hi),
        }
    }

    pub fn min(&self, o: &Interval) -> Interval {
        Interval {
            lo: Dyadic::min(&self.lo, &o.lo),
            hi: Dyadic::min(&self.hi, &o.hi),
        }
    }

    pub fn round(&self, prec: u64) -> Interval {
        Interval {
            lo: self.lo.round(prec, Round::Down),
            hi: self.hi.round(prec, Round::Up),
        }
    }

    pub fn add(&self, o: &Interval, prec: u64) -> Interval {
        Interval {
            lo: (&self.lo + &o.lo).round(prec, Round::Down),
            hi: (&self.hi + &o.hi).round(prec, Round::Up),
        }
    }

    pub fn sub(&self, o: &Interval, prec: u64) -> Interval {
        Interval {
            lo: (&self.lo - &o.hi).round(prec, Round::Down),
            hi: (&self.hi - &o.lo).round(prec, Round::Up),
        }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn mul(&self, o: &Interval, prec: u64) -> Interval {
        if self.is_point() && o.is_point() {
            let p = &self.lo * &o.lo;
            return Interval {
                lo: p.round(prec, Round::Down),
                hi: p.round(prec, Round::Up),
            };
        }
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().unwrap().round(prec, Round::Down);
        let hi = c.iter().max().unwrap().round(prec, Round::Up);
        Interval { lo, hi }
    }

    pub fn sqr(&self, prec: u64) -> Interval {
        let a = &self.lo * &self.lo;
        let b = &self.hi * &self.hi;
        let hi = Dyadic::max(&a, &b).round(prec, Round::Up);
        let lo = if self.contains_zero() {
            Dyadic::zero()
        } else {
            Dyadic::min(&a, &b).round(prec, Round::Down)
        };
        Interval { lo, hi }
    }

    /// Multiply by `2^k` exactly.
    pub fn shl(&self, k: i64) -> Interval {
        Interval {
            lo: self.lo.shl(k),
            hi: self.hi.shl(k),
        }
    }

    /// Division; `o` must not contain zero.
    pub fn div(&self, o: &Interval, prec: u64) -> Interval {
        assert!(!o.contains_zero(), "interval division by an interval containing zero");
        let lo = [
            self.lo.div(&o.lo, prec, Round::Down),
            self.lo.div(&o.hi, prec, Round::Down),
            self.hi.div(&o.lo, prec, Round::Down),
            self.hi.div(&o.hi, prec, Round::Down),
        ]
        .into_iter()
        .min()
        .unwrap();
        let hi = [
            self.lo.div(&o.lo, prec, Round::Up),
            self.lo.div(&o.hi, prec, Round::Up),
            self.hi.div(&o.lo, prec, Round::Up),
            self.hi.div(&o.hi, prec, Round::Up),
        ]
        .into_iter()
        .max()
        .unwrap();
        Interval { lo, hi }
    }

    pub fn div_int(&self, n: i64, prec: u64) -> Interval {
        self.div(&Interval::from_i64(n), prec)
    }

    /// Square root; negative parts are clipped to zero.
    pub fn sqrt(&self, prec: u64) -> Interval {
        let lo = if self.lo.is_positive() {
            self.lo.sqrt(prec, Round::Down)
        } else {
            Dyadic::zero()
        };
        let hi = if self.hi.is_positive() {
            self.hi.sqrt(prec, Round::Up)
        } else {
            Dyadic::zero()
        };
        Interval { lo, hi }
    }

    /// Natural logarithm; requires `lo > 0`.
    pub fn ln(&self, prec: u64) -> Interval {
        assert!(self.lo.is_positive(), "log of a non-positive interval");
        let lo = ln_enclosure(&self.lo, prec).lo;
        let hi = ln_enclosure(&self.hi, prec).hi;
        Interval { lo, hi }
    }

    pub fn pow_u(&self, n: u32, prec: u64) -> Interval {
        let mut result = Interval::from_i64(1);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base, prec);
            }
            n >>= 1;
            if n > 0 {
                base = base.sqr(prec);
            }
        }
        result
    }

    /// Positive real `q`-th root; requires `lo >= 0`.
    pub fn root(&self, q: u32, prec: u64) -> Interval {
        assert!(!self.lo.is_negative(), "root of a negative interval");
        Interval {
            lo: nth_root(&self.lo, q, prec, Round::Down),
            hi: nth_root(&self.hi, q, prec, Round::Up),
        }
    }

    /// `x^(p/q)` for `x > 0` and `q > 0`.
    pub fn pow_ratio(&self, p: i64, q: u32, prec: u64) -> Interval {
        assert!(self.lo.is_positive(), "rational power of a non-positive interval");
        let guard = prec + 16;
        let pw = self.pow_u(p.unsigned_abs() as u32, guard).root(q, guard);
        let r = if p < 0 {
            Interval::from_i64(1).div(&pw, guard)
        } else {
            pw
        };
        r.round(prec)
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64()
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo.to_f64(), self.hi.to_f64())
    }
}

fn nth_root(x: &Dyadic, q: u32, prec: u64, mode: Round) -> Dyadic {
    if x.is_zero() {
        return Dyadic::zero();
    }
    if q == 1 {
        return x.clone();
    }
    let e = x.exponent();
    let q64 = q as i64;
    // Choose fractional bits f with e + q*f >= 0 and enough significance.
    let want = prec as i64 + 8;
    let mut f = want - (e + x.bits() as i64) / q64;
    f = f.max(want);
    while e + q64 * f < 0 {
        f += 1;
    }
    let n: BigInt = x.mantissa() << ((e + q64 * f) as u64);
    let r = n.nth_root(q);
    let r = if mode == Round::Up && num_traits::pow(r.clone(), q as usize) != n {
        r + 1
    } else {
        r
    };
    Dyadic::new(r, -f).round(prec, mode)
}

/// Fixed-point `atanh(num/den) * 2^w`, returning (value, error bound in ulps).
/// Requires `|num/den| <= 1/3`.
fn atanh_fixed(num: &BigInt, den: &BigInt, w: u64) -> (BigInt, BigInt) {
    let s = (num << w) / den;
    let s2: BigInt = (&s * &s) >> w;
    let mut term = s.clone();
    let mut sum = s;
    let mut j: u64 = 0;
    loop {
        j += 1;
        term = (&term * &s2) >> w;
        if term.magnitude() <= &num_bigint::BigUint::one() {
            break;
        }
        sum += &term / BigInt::from(2 * j + 1);
    }
    (sum, BigInt::from(4 * j + 32))
}

/// Enclosure of `ln x` for dyadic `x > 0`.
pub fn ln_enclosure(x: &Dyadic, prec: u64) -> Interval {
    assert!(x.is_positive(), "log of non-positive dyadic");
    if *x == Dyadic::one() {
        return Interval::zero();
    }
    let m = x.mantissa();
    let b = m.bits();
    let mut den = BigInt::one() << (b - 1);
    let mut k = x.exponent() + b as i64 - 1;
    // y = m/den in [1,2); move to [3/4, 3/2].
    if m * 2u32 > &den * 3u32 {
        den <<= 1u32;
        k += 1;
    }
    let w = prec + 96;
    let (ly, ey) = atanh_fixed(&(m - &den), &(m + &den), w);
    let mut val = ly * 2u32;
    let mut err = ey * 2u32;
    if k != 0 {
        let (l2, e2) = atanh_fixed(&BigInt::one(), &BigInt::from(3), w);
        let kb = BigInt::from(k);
        val += &kb * l2 * 2u32;
        err += kb.abs() * e2 * 2u32;
    }
    let lo = Dyadic::new(&val - &err, -(w as i64)).round(prec, Round::Down);
    let hi = Dyadic::new(&val + &err, -(w as i64)).round(prec, Round::Up);
    Interval { lo, hi }
}

/// Enclosure of `ln 2`.
pub fn ln2(prec: u64) -> Interval {
    ln_enclosure(&Dyadic::from(2), prec)
}

/// A closed axis-aligned box in the complex plane.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct ComplexBox {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexBox {
    pub fn new(re: Interval, im: Interval) -> ComplexBox {
        ComplexBox { re, im }
    }

    pub fn point(re: Dyadic, im: Dyadic) -> ComplexBox {
        ComplexBox {
            re: Interval::point(re),
            im: Interval::point(im),
        }
    }

    pub fn real(re: Interval) -> ComplexBox {
        ComplexBox {
            re,
            im: Interval::zero(),
        }
    }

    pub fn from_int(n: &BigInt) -> ComplexBox {
        ComplexBox::real(Interval::from_int(n))
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn contains_point(&self, re: &Dyadic, im: &Dyadic) -> bool {
        self.re.contains(re) && self.im.contains(im)
    }

    /// True if `o` lies inside `self`.
    pub fn contains_box(&self, o: &ComplexBox) -> bool {
        self.re.lo <= o.re.lo && o.re.hi <= self.re.hi && self.im.lo <= o.im.lo && o.im.hi <= self.im.hi
    }

    pub fn intersects(&self, o: &ComplexBox) -> bool {
        self.re.intersects(&o.re) && self.im.intersects(&o.im)
    }

    /// Largest side length.
    pub fn width(&self) -> Dyadic {
        Dyadic::max(&self.re.width(), &self.im.width())
    }

    pub fn center(&self) -> (Dyadic, Dyadic) {
        (self.re.mid(), self.im.mid())
    }

    pub fn add(&self, o: &ComplexBox, prec: u64) -> ComplexBox {
        ComplexBox {
            re: self.re.add(&o.re, prec),
            im: self.im.add(&o.im, prec),
        }
    }

    pub fn sub(&self, o: &ComplexBox, prec: u64) -> ComplexBox {
        ComplexBox {
            re: self.re.sub(&o.re, prec),
            im: self.im.sub(&o.im, prec),
        }
    }

    pub fn mul(&self, o: &ComplexBox, prec: u64) -> ComplexBox {
        let re = self.re.mul(&o.re, prec).sub(&self.im.mul(&o.im, prec), prec);
        let im = self.re.mul(&o.im, prec).add(&self.im.mul(&o.re, prec), prec);
        ComplexBox { re, im }
    }

    pub fn scale(&self, k: &Interval, prec: u64) -> ComplexBox {
        ComplexBox {
            re: self.re.mul(k, prec),
            im: self.im.mul(k, prec),
        }
    }

    pub fn conj(&self) -> ComplexBox {
        ComplexBox {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    /// Enclosure of `|z|^2`.
    pub fn norm_sqr(&self, prec: u64) -> Interval {
        self.re.sqr(prec).add(&self.im.sqr(prec), prec)
    }

    /// Complex division; the divisor must exclude zero.
    pub fn div(&self, o: &ComplexBox, prec: u64) -> ComplexBox {
        let n = o.norm_sqr(prec);
        assert!(n.is_positive(), "complex division by a box containing zero");
        let num = self.mul(&o.conj(), prec);
        ComplexBox {
            re: num.re.div(&n, prec),
            im: num.im.div(&n, prec),
        }
    }

    pub fn inv(&self, prec: u64) -> ComplexBox {
        ComplexBox::real(Interval::from_i64(1)).div(self, prec)
    }

    pub fn pow_u(&self, n: u64, prec: u64) -> ComplexBox {
        let mut result = ComplexBox::real(Interval::from_i64(1));
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base, prec);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base, prec);
            }
        }
        result
    }

    /// Enlarge by `r` on every side.
    pub fn inflate(&self, r: &Dyadic) -> ComplexBox {
        ComplexBox {
            re: Interval::new(&self.re.lo - r, &self.re.hi + r),
            im: Interval::new(&self.im.lo - r, &self.im.hi + r),
        }
    }

    pub fn parse(s: &str) -> Result<ComplexBox> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!("box needs 4 endpoints, got '{s}'")));
        }
        let re_lo = parse_dyadic(parts[0], Round::Down)?;
        let re_hi = parse_dyadic(parts[1], Round::Up)?;
        let im_lo = parse_dyadic(parts[2], Round::Down)?;
        let im_hi = parse_dyadic(parts[3], Round::Up)?;
        if re_lo > re_hi || im_lo > im_hi {
            return Err(Error::Parse(format!("inverted box '{s}'")));
        }
        Ok(ComplexBox {
            re: Interval::new(re_lo, re_hi),
            im: Interval::new(im_lo, im_hi),
        })
    }
}

impl fmt::Display for ComplexBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.re.lo, self.re.hi, self.im.lo, self.im.hi)
    }
}

impl fmt::Debug for ComplexBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + i{:?}", self.re, self.im)
    }
}

impl From<ComplexBox> for String {
    fn from(b: ComplexBox) -> String {
        b.to_string()
    }
}

impl TryFrom<String> for ComplexBox {
    type Error = Error;
    fn try_from(s: String) -> Result<ComplexBox> {
        ComplexBox::parse(&s)
    }
}
