//! Dense univariate polynomials with arbitrary-precision integer coefficients.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{ComplexBox, Interval};
use crate::modp;

/// Integer polynomial, constant term first. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<String>", try_from = "Vec<String>")]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> IntPoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(c: &[i64]) -> IntPoly {
        IntPoly::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn zero() -> IntPoly {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> IntPoly {
        IntPoly::new(vec![c])
    }

    pub fn one() -> IntPoly {
        IntPoly::constant(BigInt::one())
    }

    /// `c * x^k`.
    pub fn monomial(c: BigInt, k: usize) -> IntPoly {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        IntPoly::new(v)
    }

    /// `a*x + b`.
    pub fn linear(a: BigInt, b: BigInt) -> IntPoly {
        IntPoly::new(vec![b, a])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut g = self.content();
        if self.lead().is_negative() {
            g = -g;
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one() && self.lead().is_positive()
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn div_scalar(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c / k).collect())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPoly::new(v)
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        let mut r = IntPoly::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// `x^deg * f(1/x)`.
    pub fn reverse(&self) -> IntPoly {
        let mut v = self.coeffs.clone();
        v.reverse();
        IntPoly::new(v)
    }

    /// `f(-x)`.
    pub fn negate_var(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `f(x^k)`.
    pub fn inflate_var(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.degree() * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * k] = c.clone();
        }
        IntPoly::new(v)
    }

    /// Integer multiple of `f(x * q / p)` with integer coefficients:
    /// the roots are the roots of `f` multiplied by `p / q`.
    pub fn scale_roots(&self, p: &BigInt, q: &BigInt) -> IntPoly {
        let d = self.degree();
        let mut v = Vec::with_capacity(d + 1);
        let mut qp = BigInt::one();
        let ppow: Vec<BigInt> = {
            let mut pw = vec![BigInt::one(); d + 1];
            for i in 1..=d {
                pw[i] = &pw[i - 1] * p;
            }
            pw
        };
        for (i, c) in self.coeffs.iter().enumerate() {
            v.push(c * &qp * &ppow[d - i]);
            qp *= q;
        }
        IntPoly::new(v)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_interval(&self, x: &Interval, prec: u64) -> Interval {
        let mut acc = Interval::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x, prec).add(&Interval::from_int(c), prec);
        }
        acc
    }

    pub fn eval_box(&self, z: &ComplexBox, prec: u64) -> ComplexBox {
        let mut acc = ComplexBox::from_int(&BigInt::zero());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z, prec).add(&ComplexBox::from_int(c), prec);
        }
        acc
    }

    /// Exact quotient in Z[x], or None if `d` does not divide `self`.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if self.degree() < d.degree() {
            return None;
        }
        let mut r = self.coeffs.clone();
        let dd = d.degree();
        let lc = d.lead();
        let mut q = vec![BigInt::zero(); self.degree() - dd + 1];
        for k in (0..q.len()).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let (c, rem) = top.div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= &c * dc;
            }
            q[k] = c;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::new(q))
    }

    /// Pseudo-remainder `lc(d)^(deg f - deg d + 1) f mod d`.
    pub fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree();
        let lc = d.lead();
        let mut r = self.clone();
        while !r.is_zero() && r.degree() >= dd {
            let k = r.degree() - dd;
            let t = r.lead();
            let mut v: Vec<BigInt> = r.coeffs.iter().map(|c| c * &lc).collect();
            for (j, dc) in d.coeffs.iter().enumerate() {
                v[k + j] -= &t * dc;
            }
            r = IntPoly::new(v);
        }
        r
    }

    /// Greatest common divisor, primitive with positive leading coefficient
    /// (times the gcd of contents).
    pub fn gcd(&self, o: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return o.primitive().scale(&o.content());
        }
        if o.is_zero() {
            return self.primitive().scale(&self.content());
        }
        let cont = self.content().gcd(&o.content());
        let mut a = self.primitive();
        let mut b = o.primitive();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        if b.degree() == 0 || modp::coprime_modular(&a, &b) {
            return IntPoly::constant(cont);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive().scale(&cont)
    }

    pub fn is_squarefree(&self) -> bool {
        if self.degree() <= 1 {
            return true;
        }
        if modp::squarefree_mod_some_prime(self) {
            return true;
        }
        self.gcd(&self.derivative()).degree() == 0
    }

    /// Squarefree decomposition of a primitive polynomial: pairs `(g_i, i)` with
    /// `f = prod g_i^i`, each `g_i` primitive and squarefree, pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPoly, u32)> {
        let f = self.primitive();
        if f.degree() == 0 {
            return Vec::new();
        }
        if f.is_squarefree() {
            return vec![(f, 1)];
        }
        let fp = f.derivative();
        let a = f.gcd(&fp).primitive();
        let mut b = f.div_exact(&a).expect("gcd divides f");
        let mut c = fp.div_exact(&a).expect("gcd divides f'");
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        let mut i = 1;
        while b.degree() > 0 {
            let ai = b.gcd(&d).primitive();
            b = b.div_exact(&ai).expect("exact");
            c = d.div_exact(&ai).expect("exact");
            d = c.sub(&b.derivative());
            if ai.degree() > 0 {
                out.push((ai, i));
            }
            i += 1;
        }
        out
    }

    /// Squarefree part (product of the distinct irreducible factors), primitive.
    pub fn squarefree_part(&self) -> IntPoly {
        let mut r = IntPoly::one();
        for (g, _) in self.squarefree_decomposition() {
            r = r.mul(&g);
        }
        r
    }

    /// Sum of squares of coefficients.
    pub fn norm2_sqr(&self) -> BigInt {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    pub fn max_coeff_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }

    /// Parse `[c0,c1,...,cd]`.
    pub fn parse(s: &str) -> Result<IntPoly> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("polynomial must look like [c0,...,cd], got '{s}'")))?;
        let mut v = Vec::new();
        for part in inner.split(',') {
            let p = part.trim().replace('\u{2212}', "-");
            v.push(BigInt::from_str(&p).map_err(|_| Error::Parse(format!("bad coefficient '{part}'")))?);
        }
        Ok(IntPoly::new(v))
    }

    pub fn to_list_string(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<IntPoly> for Vec<String> {
    fn from(p: IntPoly) -> Vec<String> {
        p.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl TryFrom<Vec<String>> for IntPoly {
    type Error = Error;
    fn try_from(v: Vec<String>) -> Result<IntPoly> {
        let mut c = Vec::with_capacity(v.len());
        for s in v {
            c.push(BigInt::from_str(&s).map_err(|_| Error::Parse(format!("bad coefficient '{s}'")))?);
        }
        Ok(IntPoly::new(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn arithmetic_basics() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        assert_eq!(a.div_exact(&b), Some(p(&[-1, 1])));
        assert_eq!(a.div_exact(&p(&[2, 1])), None);
        assert_eq!(a.mul(&b), p(&[-1, -1, 1, 1]));
        assert_eq!(p(&[6, 4, 2]).primitive(), p(&[3, 2, 1]));
        assert_eq!(p(&[-6, -4]).primitive(), p(&[3, 2]));
        assert_eq!(p(&[1, 2, 3]).reverse(), p(&[3, 2, 1]));
        assert_eq!(p(&[-2, 0, 1]).to_string(), "x^2 - 2");
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = p(&[-2, 0, 1]).mul(&p(&[-1, 1]));
        let b = p(&[-2, 0, 1]).mul(&p(&[3, 1]));
        assert_eq!(a.gcd(&b), p(&[-2, 0, 1]));
        let f = p(&[-1, 1]).pow(3).mul(&p(&[1, 0, 1]).pow(2)).mul(&p(&[5, 1]));
        let sq = f.squarefree_decomposition();
        assert_eq!(sq, vec![(p(&[5, 1]), 1), (p(&[1, 0, 1]), 2), (p(&[-1, 1]), 3)]);
        assert!(!f.is_squarefree());
        assert!(p(&[-2, 0, 1]).is_squarefree());
        assert_eq!(f.squarefree_part().degree(), 4);
    }

    #[test]
    fn root_scaling() {
        // roots of x^2-2 scaled by 3/2: x^2 - 9/2 -> 2x^2 - 9
        let g = p(&[-2, 0, 1]).scale_roots(&BigInt::from(3), &BigInt::from(2)).primitive();
        assert_eq!(g, p(&[-9, 0, 2]));
    }

    #[test]
    fn parse_roundtrip() {
        let f = IntPoly::parse("[-1,-1,1]").unwrap();
        assert_eq!(f, p(&[-1, -1, 1]));
        assert_eq!(IntPoly::parse(&f.to_list_string()).unwrap(), f);
        assert!(IntPoly::parse("1,2").is_err());
    }
}
