//! Deterministic pseudo-random corpora of algebraic numbers.
//!
//! Generation uses ChaCha8 seeded from a `u64`, so a given [`CorpusSpec`]
//! always yields the same list on every platform.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algnum::AlgebraicNumber;
use crate::cyclotomic::cyclotomic;
use crate::error::Result;
use crate::factor::is_irreducible;
use crate::poly::IntPoly;
use crate::roots::RootSet;

/// Largest leading coefficient drawn for non-monic polynomials.
const MAX_LEADING: i64 = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusSpec {
    pub seed: u64,
    pub degree_range: (usize, usize),
    pub coeff_bound: i64,
    pub count: usize,
}

impl CorpusSpec {
    pub fn new(seed: u64, degree_range: (usize, usize), coeff_bound: i64, count: usize) -> CorpusSpec {
        assert!(degree_range.0 >= 1 && degree_range.0 <= degree_range.1);
        assert!(coeff_bound >= 1);
        CorpusSpec { seed, degree_range, coeff_bound, count }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    pub fn generate(&self, max_bits: u64) -> Result<Vec<AlgebraicNumber>> {
        self.generate_where(max_bits, |_| Ok(true))
    }

    /// Like [`CorpusSpec::generate`], keeping only draws accepted by `keep`
    /// until `count` numbers have been collected.
    pub fn generate_where<F>(&self, max_bits: u64, mut keep: F) -> Result<Vec<AlgebraicNumber>>
    where
        F: FnMut(&AlgebraicNumber) -> Result<bool>,
    {
        let mut rng = self.rng();
        let mut out = Vec::with_capacity(self.count);
        while out.len() < self.count {
            let d = rng.gen_range(self.degree_range.0..=self.degree_range.1);
            if let Some(a) = random_number(&mut rng, d, self.coeff_bound, max_bits)? {
                if keep(&a)? {
                    out.push(a);
                }
            }
        }
        Ok(out)
    }
}

fn nonzero(rng: &mut ChaCha8Rng, b: i64) -> i64 {
    loop {
        let v = rng.gen_range(-b..=b);
        if v != 0 {
            return v;
        }
    }
}

/// A random primitive irreducible polynomial of degree `d`, or `None` if the
/// draw is reducible.
pub fn random_irreducible(rng: &mut ChaCha8Rng, d: usize, b: i64) -> Option<IntPoly> {
    let mut c: Vec<i64> = (0..d).map(|_| rng.gen_range(-b..=b)).collect();
    c[0] = nonzero(rng, b);
    let lead = if rng.gen_bool(0.5) { 1 } else { rng.gen_range(1..=MAX_LEADING.min(b)) };
    c.push(lead);
    let f = IntPoly::from_i64s(&c);
    (f.is_primitive() && is_irreducible(&f)).then_some(f)
}

/// The root of `f` whose box is first in the order (re_lo, im_lo).
pub fn first_root(f: &IntPoly, max_bits: u64) -> Result<AlgebraicNumber> {
    let rs = RootSet::isolate(f, max_bits)?;
    let idx = (0..rs.len())
        .min_by(|&i, &j| {
            let (a, b) = (rs.root_box(i), rs.root_box(j));
            a.re.lo.cmp(&b.re.lo).then(a.im.lo.cmp(&b.im.lo))
        })
        .expect("positive degree");
    Ok(AlgebraicNumber::from_parts(f.clone(), rs, idx))
}

/// One corpus draw of degree `d`; `None` when the draw is rejected.
pub fn random_number(rng: &mut ChaCha8Rng, d: usize, b: i64, max_bits: u64) -> Result<Option<AlgebraicNumber>> {
    if d == 1 {
        let p = nonzero(rng, b);
        let q = rng.gen_range(1..=b);
        return AlgebraicNumber::from_i64(p, q).map(Some);
    }
    match random_irreducible(rng, d, b) {
        Some(f) => first_root(&f, max_bits).map(Some),
        None => Ok(None),
    }
}

/// A random nonzero rational with numerator and denominator bounded by `b`.
pub fn random_rational(rng: &mut ChaCha8Rng, b: i64) -> BigRational {
    let p = nonzero(rng, b);
    let q = rng.gen_range(1..=b);
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// A number `zeta * r^(1/k)` with a power in `Q`, built from the root of
/// `q x^k - p` first in box order and a primitive `n`-th root of unity.
/// Returns the number and the exponent `k * n` that makes it rational.
pub fn random_divisible_member(rng: &mut ChaCha8Rng, b: i64, max_bits: u64) -> Result<(AlgebraicNumber, u64)> {
    loop {
        let r = random_rational(rng, b);
        let k = rng.gen_range(1..=3usize);
        let n = [1u64, 2, 3, 4, 5, 6][rng.gen_range(0..6)];
        let mut c = vec![BigInt::zero(); k + 1];
        c[0] = -r.numer().clone();
        c[k] = r.denom().clone();
        let f = IntPoly::new(c);
        let factors = crate::factor::distinct_factors(&f);
        let g = &factors[rng.gen_range(0..factors.len())];
        let base = first_root(g, max_bits)?;
        let z = first_root(&cyclotomic(n), max_bits)?;
        let a = base.mul(&z, max_bits)?;
        if a.degree() >= 2 || rng.gen_bool(0.2) {
            return Ok((a, k as u64 * n));
        }
    }
}

/// True when the conjugates of `f` do not all have the same absolute value,
/// which rules out every power of a root being rational.
pub fn moduli_differ(f: &IntPoly, max_bits: u64) -> Result<bool> {
    let rs = RootSet::isolate(f, max_bits)?;
    let moduli: Vec<f64> = rs
        .boxes()
        .iter()
        .map(|b| b.norm_sqr(64).mid().to_f64().sqrt())
        .collect();
    let lo = moduli.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = moduli.iter().cloned().fold(0.0, f64::max);
    Ok(hi - lo > 1e-6 * hi.abs().max(1.0))
}

/// A number of degree in `2..=dmax` whose conjugates have different absolute values.
pub fn random_non_member(rng: &mut ChaCha8Rng, dmax: usize, b: i64, max_bits: u64) -> Result<AlgebraicNumber> {
    loop {
        let d = rng.gen_range(2..=dmax);
        if let Some(f) = random_irreducible(rng, d, b) {
            if moduli_differ(&f, max_bits)? {
                return first_root(&f, max_bits);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algnum::DEFAULT_MAX_BITS as MB;

    #[test]
    fn deterministic() {
        let spec = CorpusSpec::new(7, (1, 4), 10, 12);
        let a = spec.generate(MB).unwrap();
        let b = spec.generate(MB).unwrap();
        assert_eq!(a.len(), 12);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.to_literal(), y.to_literal());
        }
        assert!(a.iter().all(|x| (1..=4).contains(&x.degree())));
    }

    #[test]
    fn members_have_rational_powers() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let (a, m) = random_divisible_member(&mut rng, 9, MB).unwrap();
            assert!(a.pow_int(m as i64, MB).unwrap().is_rational());
        }
    }
}
