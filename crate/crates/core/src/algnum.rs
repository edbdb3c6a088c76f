//! Exact nonzero algebraic numbers: an irreducible primitive minimal
//! polynomial together with a certified isolating box for one of its roots.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cyclotomic::cyclotomic_index;
use crate::error::{Error, Result};
use crate::factor::distinct_factors;
use crate::interval::{ComplexBox, Interval};
use crate::poly::IntPoly;
use crate::resultant::{power_poly, product_poly, quotient_poly};
use crate::roots::RootSet;

/// Default precision ceiling in bits.
pub const DEFAULT_MAX_BITS: u64 = 1 << 16;

/// A nonzero algebraic number.
#[derive(Clone)]
pub struct AlgebraicNumber {
    minpoly: IntPoly,
    roots: Arc<RootSet>,
    index: usize,
}

/// Binary operations exposed through [`arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Mul,
    Div,
    PowInt,
}

/// Right-hand operand of [`arith`].
#[derive(Clone, Debug)]
pub enum Operand {
    Number(AlgebraicNumber),
    Integer(i64),
}

pub fn arith(op: ArithOp, a: &AlgebraicNumber, rhs: &Operand, max_bits: u64) -> Result<AlgebraicNumber> {
    match (op, rhs) {
        (ArithOp::Mul, Operand::Number(b)) => a.mul(b, max_bits),
        (ArithOp::Div, Operand::Number(b)) => a.div(b, max_bits),
        (ArithOp::Mul, Operand::Integer(n)) => a.mul(&AlgebraicNumber::from_i64(*n, 1)?, max_bits),
        (ArithOp::Div, Operand::Integer(n)) => a.div(&AlgebraicNumber::from_i64(*n, 1)?, max_bits),
        (ArithOp::PowInt, Operand::Integer(e)) => a.pow_int(*e, max_bits),
        (ArithOp::PowInt, Operand::Number(_)) => {
            Err(Error::PreconditionViolated("pow_int needs an integer exponent".into()))
        }
    }
}

fn ceil_log2(n: u64) -> u64 {
    64 - n.saturating_sub(1).leading_zeros() as u64
}

/// Find the unique `(set, root)` pair whose boxes meet every enclosure produced
/// by `enclose(bits)` for increasing `bits`.
pub(crate) fn locate_among<F>(sets: &mut [RootSet], mut enclose: F, max_bits: u64) -> Result<(usize, usize)>
where
    F: FnMut(u64) -> Result<ComplexBox>,
{
    let mut bits = 64;
    loop {
        let target = enclose(bits)?;
        let mut hits = Vec::new();
        for (k, rs) in sets.iter_mut().enumerate() {
            for i in rs.candidates(&target, max_bits)? {
                hits.push((k, i));
            }
        }
        if hits.len() == 1 {
            return Ok(hits[0]);
        }
        bits *= 2;
        if bits > max_bits {
            return Err(Error::PrecisionExhausted(max_bits));
        }
    }
}

/// Pick the unique root among `factors` that lies in every enclosure produced
/// by `enclose(bits)`.
pub(crate) fn select_root<F>(factors: Vec<IntPoly>, enclose: F, max_bits: u64) -> Result<AlgebraicNumber>
where
    F: FnMut(u64) -> Result<ComplexBox>,
{
    let mut sets: Vec<RootSet> = Vec::with_capacity(factors.len());
    for f in &factors {
        sets.push(RootSet::isolate(f, max_bits)?);
    }
    let (k, i) = locate_among(&mut sets, enclose, max_bits)?;
    let rs = sets.swap_remove(k);
    Ok(AlgebraicNumber::from_parts(factors[k].clone(), rs, i))
}

fn normalize(f: &IntPoly) -> IntPoly {
    f.primitive()
}

impl AlgebraicNumber {
    pub(crate) fn from_parts(minpoly: IntPoly, roots: RootSet, index: usize) -> AlgebraicNumber {
        AlgebraicNumber { minpoly, roots: Arc::new(roots), index }
    }

    pub fn from_rational(p: &BigInt, q: &BigInt) -> Result<AlgebraicNumber> {
        if p.is_zero() || q.is_zero() {
            return Err(Error::ZeroInput);
        }
        let r = BigRational::new(p.clone(), q.clone());
        let f = IntPoly::linear(r.denom().clone(), -r.numer().clone());
        let rs = RootSet::isolate(&f, DEFAULT_MAX_BITS)?;
        Ok(AlgebraicNumber { minpoly: f, roots: Arc::new(rs), index: 0 })
    }

    pub fn from_i64(p: i64, q: i64) -> Result<AlgebraicNumber> {
        AlgebraicNumber::from_rational(&BigInt::from(p), &BigInt::from(q))
    }

    pub fn from_ratio(r: &BigRational) -> Result<AlgebraicNumber> {
        AlgebraicNumber::from_rational(r.numer(), r.denom())
    }

    pub fn one() -> AlgebraicNumber {
        AlgebraicNumber::from_i64(1, 1).expect("one is nonzero")
    }

    /// The number defined by the unique root of `f` inside `b`.
    pub fn from_poly_root(f: &IntPoly, b: &ComplexBox, max_bits: u64) -> Result<AlgebraicNumber> {
        if f.degree() == 0 {
            return Err(Error::NotIsolating("constant polynomial has no roots".into()));
        }
        let factors = distinct_factors(f);
        let mut inside = Vec::new();
        let mut sets = Vec::with_capacity(factors.len());
        for (k, g) in factors.iter().enumerate() {
            let mut rs = RootSet::isolate(g, max_bits)?;
            loop {
                let mut undecided = false;
                let mut found = Vec::new();
                for i in 0..rs.len() {
                    let rb = rs.root_box(i);
                    if b.contains_box(rb) {
                        found.push(i);
                    } else if rb.intersects(b) {
                        undecided = true;
                    }
                }
                if !undecided {
                    inside.extend(found.into_iter().map(|i| (k, i)));
                    break;
                }
                if rs.prec() * 2 > max_bits {
                    return Err(Error::NotIsolating("a root lies on the box boundary".into()));
                }
                rs.refine(max_bits)?;
            }
            sets.push(Some(rs));
        }
        if inside.len() == 1 && factors[inside[0].0].coeff(0).is_zero() {
            return Err(Error::ZeroRoot);
        }
        if b.contains_zero() {
            return Err(Error::NotIsolating("box contains zero".into()));
        }
        if inside.len() != 1 {
            return Err(Error::NotIsolating(format!("box contains {} roots", inside.len())));
        }
        let (k, i) = inside[0];
        let rs = sets[k].take().expect("root set present");
        Ok(AlgebraicNumber { minpoly: factors[k].clone(), roots: Arc::new(rs), index: i })
    }

    pub fn minpoly(&self) -> &IntPoly {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree()
    }

    /// Current isolating box.
    pub fn root_box(&self) -> &ComplexBox {
        self.roots.root_box(self.index)
    }

    pub fn root_set(&self) -> &RootSet {
        &self.roots
    }

    /// Position of this root within [`AlgebraicNumber::root_set`].
    pub fn root_index(&self) -> usize {
        self.index
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.degree() != 1 {
            return None;
        }
        Some(BigRational::new(-self.minpoly.coeff(0), self.minpoly.coeff(1)))
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    /// An enclosure of the number whose width is at most `2^-bits` relative to
    /// `max(1, |alpha|)`.
    pub fn enclosure(&self, bits: u64, max_bits: u64) -> Result<ComplexBox> {
        if let Some(r) = self.as_rational() {
            return Ok(ComplexBox::real(Interval::from_ratio(&r, bits + 8)));
        }
        if crate::roots::box_is_narrow(self.root_box(), bits) {
            return Ok(self.root_box().clone());
        }
        let mut rs = (*self.roots).clone();
        rs.refine_to(bits, max_bits)?;
        Ok(rs.root_box(self.index).clone())
    }

    /// Like [`AlgebraicNumber::enclosure`], refined further until it excludes zero.
    pub fn nonzero_enclosure(&self, bits: u64, max_bits: u64) -> Result<ComplexBox> {
        let mut b = bits;
        loop {
            let z = self.enclosure(b, max_bits)?;
            if !z.contains_zero() {
                return Ok(z);
            }
            b *= 2;
            if b > max_bits {
                return Err(Error::PrecisionExhausted(max_bits));
            }
        }
    }

    /// All conjugates, this number first, with pairwise disjoint boxes.
    pub fn conjugates(&self) -> Vec<AlgebraicNumber> {
        let mut out = vec![self.clone()];
        for i in 0..self.roots.len() {
            if i != self.index {
                out.push(AlgebraicNumber { minpoly: self.minpoly.clone(), roots: self.roots.clone(), index: i });
            }
        }
        out
    }

    /// The multiplicative order if this is a root of unity.
    pub fn is_torsion(&self) -> Option<u64> {
        cyclotomic_index(&self.minpoly)
    }

    pub fn equals(&self, o: &AlgebraicNumber, max_bits: u64) -> Result<bool> {
        if self.minpoly != o.minpoly {
            return Ok(false);
        }
        if self.degree() == 1 {
            return Ok(true);
        }
        let mut rs = (*self.roots).clone();
        Ok(rs.locate(o.root_box(), max_bits)? == self.index)
    }

    pub fn mul(&self, o: &AlgebraicNumber, max_bits: u64) -> Result<AlgebraicNumber> {
        match (self.as_rational(), o.as_rational()) {
            (Some(a), Some(b)) => AlgebraicNumber::from_ratio(&(a * b)),
            (Some(a), None) => o.scale(&a, max_bits),
            (None, Some(b)) => self.scale(&b, max_bits),
            (None, None) => {
                let factors = distinct_factors(&product_poly(&self.minpoly, &o.minpoly));
                select_root(
                    factors,
                    |bits| {
                        let p = bits + 8;
                        Ok(self.enclosure(bits, max_bits)?.mul(&o.enclosure(bits, max_bits)?, p))
                    },
                    max_bits,
                )
            }
        }
    }

    pub fn div(&self, o: &AlgebraicNumber, max_bits: u64) -> Result<AlgebraicNumber> {
        match (self.as_rational(), o.as_rational()) {
            (Some(a), Some(b)) => AlgebraicNumber::from_ratio(&(a / b)),
            (Some(a), None) => o.inverse(max_bits)?.scale(&a, max_bits),
            (None, Some(b)) => self.scale(&b.recip(), max_bits),
            (None, None) => {
                let factors = distinct_factors(&quotient_poly(&self.minpoly, &o.minpoly));
                select_root(
                    factors,
                    |bits| {
                        let p = bits + 8;
                        let den = o.nonzero_enclosure(bits, max_bits)?;
                        Ok(self.enclosure(bits, max_bits)?.div(&den, p))
                    },
                    max_bits,
                )
            }
        }
    }

    /// Multiply by a nonzero rational.
    pub fn scale(&self, r: &BigRational, max_bits: u64) -> Result<AlgebraicNumber> {
        if r.is_zero() {
            return Err(Error::ZeroInput);
        }
        if let Some(a) = self.as_rational() {
            return AlgebraicNumber::from_ratio(&(a * r));
        }
        if r.is_one() {
            return Ok(self.clone());
        }
        let g = normalize(&self.minpoly.scale_roots(r.numer(), r.denom()));
        select_root(
            vec![g],
            |bits| {
                let p = bits + 8;
                let k = Interval::from_ratio(r, p);
                Ok(self.enclosure(bits, max_bits)?.scale(&k, p))
            },
            max_bits,
        )
    }

    pub fn inverse(&self, max_bits: u64) -> Result<AlgebraicNumber> {
        if let Some(a) = self.as_rational() {
            return AlgebraicNumber::from_ratio(&a.recip());
        }
        let g = normalize(&self.minpoly.reverse());
        select_root(
            vec![g],
            |bits| Ok(self.nonzero_enclosure(bits, max_bits)?.inv(bits + 8)),
            max_bits,
        )
    }

    pub fn pow_int(&self, e: i64, max_bits: u64) -> Result<AlgebraicNumber> {
        if e == 0 {
            return Ok(AlgebraicNumber::one());
        }
        if let Some(a) = self.as_rational() {
            let r = num_traits::pow(a, e.unsigned_abs() as usize);
            return AlgebraicNumber::from_ratio(&if e < 0 { r.recip() } else { r });
        }
        if e < 0 {
            return self.inverse(max_bits)?.pow_int(-e, max_bits);
        }
        if e == 1 {
            return Ok(self.clone());
        }
        let e = e as u64;
        let mut chr = self.minpoly.clone();
        let mut rest = e;
        let mut p = 2;
        while rest > 1 {
            while rest % p == 0 {
                chr = power_poly(&chr, p as usize);
                rest /= p;
            }
            p += 1;
            if p * p > rest && rest > 1 {
                chr = power_poly(&chr, rest as usize);
                rest = 1;
            }
        }
        let chr = chr.primitive();
        let factors = if chr.is_squarefree() { vec![chr] } else { distinct_factors(&chr) };
        let extra = ceil_log2(e) + 8;
        select_root(
            factors,
            |bits| {
                let z = self.enclosure(bits + extra, max_bits)?;
                Ok(z.pow_u(e, bits + 2 * extra))
            },
            max_bits,
        )
    }

    /// Literal form `poly:[c0,...];box:re_lo,re_hi,im_lo,im_hi`, or
    /// `rational:p/q` for rationals.
    pub fn to_literal(&self) -> String {
        if let Some(r) = self.as_rational() {
            return format!("rational:{}/{}", r.numer(), r.denom());
        }
        format!("poly:{};box:{}", self.minpoly.to_list_string(), self.root_box())
    }
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraicNumber({} near {:?})", self.minpoly, self.root_box())
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_literal())
    }
}
