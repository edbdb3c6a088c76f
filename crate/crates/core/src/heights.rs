//! Certified Weil heights and Mahler measures.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::algnum::AlgebraicNumber;
use crate::cyclotomic::cyclotomic_index;
use crate::dyadic::{Dyadic, Round};
use crate::error::{Error, Result};
use crate::factor::factor;
use crate::interval::Interval;
use crate::poly::IntPoly;
use crate::roots::RootSet;

/// A certified enclosure of a height, in nats.
#[derive(Clone, PartialEq, Eq)]
pub struct HeightInterval {
    lo: Dyadic,
    hi: Dyadic,
}

impl HeightInterval {
    /// Build from an enclosure, clipping the lower end at zero.
    pub fn new(iv: Interval) -> HeightInterval {
        let lo = Dyadic::max(&iv.lo, &Dyadic::zero());
        let hi = Dyadic::max(&iv.hi, &lo);
        HeightInterval { lo, hi }
    }

    pub fn zero() -> HeightInterval {
        HeightInterval { lo: Dyadic::zero(), hi: Dyadic::zero() }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn interval(&self) -> Interval {
        Interval::new(self.lo.clone(), self.hi.clone())
    }

    pub fn width(&self) -> Dyadic {
        &self.hi - &self.lo
    }

    /// True for the exact point interval `[0, 0]`.
    pub fn is_exact_zero(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }

    pub fn mid_f64(&self) -> f64 {
        self.interval().mid().to_f64()
    }

    /// Multiply by a nonnegative integer.
    pub fn scale(&self, k: u64) -> HeightInterval {
        let k = Dyadic::from(k as i64);
        HeightInterval { lo: &self.lo * &k, hi: &self.hi * &k }
    }

    /// Divide by a positive integer with outward rounding.
    pub fn div_int(&self, k: u64, prec: u64) -> HeightInterval {
        HeightInterval::new(self.interval().div_int(k as i64, prec))
    }

    pub fn max(&self, o: &HeightInterval) -> HeightInterval {
        HeightInterval { lo: Dyadic::max(&self.lo, &o.lo), hi: Dyadic::max(&self.hi, &o.hi) }
    }

    pub fn overlaps(&self, o: &HeightInterval) -> bool {
        self.interval().intersects(&o.interval())
    }
}

impl fmt::Debug for HeightInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.12e}, {:.12e}] nats", self.lo.to_f64(), self.hi.to_f64())
    }
}

impl fmt::Display for HeightInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for HeightInterval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("HeightInterval", 3)?;
        st.serialize_field("lo", &self.lo.to_string())?;
        st.serialize_field("hi", &self.hi.to_string())?;
        st.serialize_field("units", "nats")?;
        st.end()
    }
}

/// Default tolerance `2^-40` nats.
pub fn default_tol() -> Dyadic {
    Dyadic::pow2(-40)
}

fn working_prec(tol: &Dyadic) -> u64 {
    let t = tol.log2_floor().unwrap_or(0);
    (64 - t.min(0)) as u64
}

fn ln_int(n: &BigInt, prec: u64) -> Interval {
    Interval::from_int(&n.abs()).ln(prec)
}

/// `sum log max(1, |z|)` over all roots plus `log |lc|`, refined until the
/// width is at most `tol`.
fn log_mahler_squarefree(f: &IntPoly, tol: &Dyadic, max_bits: u64) -> Result<Interval> {
    let mut rs = RootSet::isolate(f, max_bits)?;
    let mut bits = working_prec(tol).max(32);
    loop {
        rs.refine_to(bits, max_bits)?;
        let prec = bits + 32;
        let mut acc = ln_int(&f.lead(), prec);
        let one = Dyadic::one();
        for b in rs.boxes() {
            let n2 = b.norm_sqr(prec);
            if n2.hi <= one {
                continue;
            }
            let lo = Dyadic::max(&n2.lo, &one);
            let term = Interval::new(lo, n2.hi).ln(prec).shl(-1);
            acc = acc.add(&term, prec);
        }
        if acc.width() <= *tol {
            return Ok(acc);
        }
        bits *= 2;
        if bits > max_bits {
            return Err(Error::PrecisionExhausted(max_bits));
        }
    }
}

/// Height of any root of the irreducible polynomial `g`.
pub fn poly_height(g: &IntPoly, tol: &Dyadic, max_bits: u64) -> Result<HeightInterval> {
    let g = g.primitive();
    let d = g.degree() as u64;
    assert!(d >= 1, "height of a constant");
    if cyclotomic_index(&g).is_some() {
        return Ok(HeightInterval::zero());
    }
    let prec = working_prec(tol) + 16;
    if d == 1 {
        let m = Dyadic::max(&Dyadic::from(g.coeff(0).abs()), &Dyadic::from(g.coeff(1).abs()));
        let mut p = prec;
        loop {
            let iv = Interval::point(m.clone()).ln(p);
            if iv.width() <= *tol {
                return Ok(HeightInterval::new(iv));
            }
            p *= 2;
        }
    }
    let t = tol * &Dyadic::from(d as i64);
    let lm = log_mahler_squarefree(&g, &t, max_bits)?;
    Ok(HeightInterval::new(lm.div_int(d as i64, prec)))
}

/// The absolute logarithmic Weil height, to width at most `tol`.
pub fn weil_height(a: &AlgebraicNumber, tol: &Dyadic, max_bits: u64) -> Result<HeightInterval> {
    assert!(tol.is_positive(), "tolerance must be positive");
    poly_height(a.minpoly(), tol, max_bits)
}

/// `|e| h(alpha)` without forming the power.
pub fn height_of_power(a: &AlgebraicNumber, e: i64, tol: &Dyadic, max_bits: u64) -> Result<HeightInterval> {
    let k = e.unsigned_abs();
    if k == 0 {
        return Ok(HeightInterval::zero());
    }
    let t = tol.div(&Dyadic::from(k as i64), 64, Round::Down);
    Ok(weil_height(a, &t, max_bits)?.scale(k))
}

/// Enclosure of the Mahler measure `|lc| prod max(1, |root|)`, with
/// `log(hi/lo) <= tol`.
pub fn mahler_measure(f: &IntPoly, tol: &Dyadic, max_bits: u64) -> Result<Interval> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut exact = Dyadic::from(f.content().abs());
    let mut numeric: Vec<(IntPoly, u32)> = Vec::new();
    for (g, m) in factor(f) {
        if cyclotomic_index(&g).is_some() {
            continue;
        }
        if g.degree() == 1 {
            let mg = Dyadic::max(&Dyadic::from(g.coeff(0).abs()), &Dyadic::from(g.coeff(1).abs()));
            for _ in 0..m {
                exact = &exact * &mg;
            }
        } else {
            numeric.push((g, m));
        }
    }
    if numeric.is_empty() {
        return Ok(Interval::point(exact));
    }
    let mut sets = Vec::with_capacity(numeric.len());
    for (g, _) in &numeric {
        sets.push(RootSet::isolate(g, max_bits)?);
    }
    let mut bits = working_prec(tol).max(32);
    loop {
        let prec = bits + 32;
        let mut acc = Interval::point(exact.clone());
        for ((g, m), rs) in numeric.iter().zip(sets.iter_mut()) {
            rs.refine_to(bits, max_bits)?;
            let mut mg = Interval::from_int(&g.lead().abs());
            let one = Interval::from_i64(1);
            for b in rs.boxes() {
                let n2 = b.norm_sqr(prec).max(&one);
                mg = mg.mul(&n2.sqrt(prec), prec);
            }
            acc = acc.mul(&mg.pow_u(*m, prec), prec);
        }
        if acc.width() <= (&acc.lo * tol).round(prec, Round::Down) {
            return Ok(acc);
        }
        bits *= 2;
        if bits > max_bits {
            return Err(Error::PrecisionExhausted(max_bits));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algnum::DEFAULT_MAX_BITS as MB;
    use crate::interval::ComplexBox;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn tol() -> Dyadic {
        default_tol()
    }

    #[test]
    fn rational_heights() {
        let h = weil_height(&AlgebraicNumber::from_i64(2, 1).unwrap(), &tol(), MB).unwrap();
        assert!((h.mid_f64() - 2f64.ln()).abs() < 1e-12);
        assert!(h.width() <= tol());
        let h = weil_height(&AlgebraicNumber::from_i64(3, 2).unwrap(), &tol(), MB).unwrap();
        assert!((h.mid_f64() - 3f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn golden_ratio_and_torsion() {
        let phi = AlgebraicNumber::from_poly_root(&p(&[-1, -1, 1]), &ComplexBox::parse("1,2,0,0").unwrap(), MB)
            .unwrap();
        let h = weil_height(&phi, &tol(), MB).unwrap();
        let want = 0.5 * ((1.0 + 5f64.sqrt()) / 2.0).ln();
        assert!((h.mid_f64() - want).abs() < 1e-12);
        let z5 = AlgebraicNumber::from_poly_root(&p(&[1, 1, 1, 1, 1]), &ComplexBox::parse("0.2,0.4,0.9,1").unwrap(), MB)
            .unwrap();
        assert!(weil_height(&z5, &tol(), MB).unwrap().is_exact_zero());
        assert!(height_of_power(&z5, 7, &tol(), MB).unwrap().is_exact_zero());
    }

    #[test]
    fn mahler_examples() {
        let m = mahler_measure(&p(&[-1, -1, 1]), &tol(), MB).unwrap();
        assert!((m.mid().to_f64() - 1.618033988749895).abs() < 1e-12);
        assert_eq!(mahler_measure(&p(&[1, 1, 1, 1, 1]), &tol(), MB).unwrap(), Interval::from_i64(1));
        assert_eq!(mahler_measure(&p(&[-3, 2]), &tol(), MB).unwrap(), Interval::from_i64(3));
        // content and multiplicity: 2 (x - 3)^2 (x^2 + 1)
        let f = p(&[-3, 1]).pow(2).mul(&p(&[1, 0, 1])).scale(&BigInt::from(2));
        assert_eq!(mahler_measure(&f, &tol(), MB).unwrap(), Interval::from_i64(18));
    }

    #[test]
    fn serializes_as_strings() {
        let h = HeightInterval::new(Interval::new(Dyadic::from(1), Dyadic::pow2(1)));
        let s = serde_json::to_string(&h).unwrap();
        assert_eq!(s, r#"{"lo":"1","hi":"2","units":"nats"}"#);
    }
}
