//! Finitely generated subgroups of the multiplicative group of algebraic
//! numbers, bounded relation search and divisible-hull membership.

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::algnum::AlgebraicNumber;
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::heights::{weil_height, HeightInterval};
use crate::interval::Interval;

/// Default exponent bound for the independence check.
pub const DEFAULT_RELATION_BOUND: u64 = 20;
/// Default bounds for [`gamma_div_member`].
pub const DEFAULT_M_MAX: u64 = 12;
pub const DEFAULT_E_MAX: u64 = 20;

const LOG_PREC: u64 = 160;

/// `Gamma = <g_1, ..., g_n>` with the cached Lipschitz constant `sum h(g_i)`.
#[derive(Clone, Debug)]
pub struct SubgroupSpec {
    pub gens: Vec<AlgebraicNumber>,
    pub rank_hint: usize,
    pub l_gamma: HeightInterval,
}

impl SubgroupSpec {
    pub fn rank(&self) -> usize {
        self.gens.len()
    }
}

/// Validate generators and compute `L_Gamma`.
pub fn make_subgroup(gens: Vec<AlgebraicNumber>, bound: u64, tol: &Dyadic, max_bits: u64) -> Result<SubgroupSpec> {
    if gens.is_empty() {
        return Err(Error::PreconditionViolated("a subgroup needs at least one generator".into()));
    }
    if let Some(i) = gens.iter().position(|g| g.is_torsion().is_some()) {
        return Err(Error::TorsionGenerator(i));
    }
    if let Some(rel) = find_relation(&gens, bound, max_bits)? {
        return Err(Error::DependentGenerators(rel));
    }
    let n = gens.len() as i64;
    let t = tol.div(&Dyadic::from(n), 64, crate::dyadic::Round::Down);
    let mut sum = Interval::zero();
    for g in &gens {
        sum = sum.add(&weil_height(g, &t, max_bits)?.interval(), LOG_PREC);
    }
    let rank_hint = gens.len();
    Ok(SubgroupSpec { gens, rank_hint, l_gamma: HeightInterval::new(sum) })
}

pub fn lipschitz_constant(g: &SubgroupSpec) -> HeightInterval {
    g.l_gamma.clone()
}

/// Enclosure of `log |a|` at the distinguished embedding.
fn log_abs(a: &AlgebraicNumber, max_bits: u64) -> Result<Interval> {
    if let Some(r) = a.as_rational() {
        let num = Interval::from_int(&r.numer().abs()).ln(LOG_PREC);
        let den = Interval::from_int(r.denom()).ln(LOG_PREC);
        return Ok(num.sub(&den, LOG_PREC));
    }
    let z = a.nonzero_enclosure(LOG_PREC, max_bits)?;
    Ok(z.norm_sqr(LOG_PREC + 16).ln(LOG_PREC).shl(-1))
}

/// `prod g_i^{e_i}`.
pub fn power_product(gens: &[AlgebraicNumber], e: &[i64], max_bits: u64) -> Result<AlgebraicNumber> {
    let mut rat = BigRational::one();
    let mut acc: Option<AlgebraicNumber> = None;
    for (g, &k) in gens.iter().zip(e) {
        if k == 0 {
            continue;
        }
        match g.as_rational() {
            Some(r) => {
                let p = num_traits::pow(r, k.unsigned_abs() as usize);
                rat *= if k < 0 { p.recip() } else { p };
            }
            None => {
                let p = g.pow_int(k, max_bits)?;
                acc = Some(match acc {
                    Some(a) => a.mul(&p, max_bits)?,
                    None => p,
                });
            }
        }
    }
    match acc {
        Some(a) => a.scale(&rat, max_bits),
        None => AlgebraicNumber::from_ratio(&rat),
    }
}

/// Vectors in `[-b, b]^n` ordered by sup norm, then lexicographically.
/// With `canonical`, only vectors whose first nonzero entry is positive.
pub(crate) fn box_vectors(n: usize, b: i64, canonical: bool) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for s in 0..=b {
        let side = (2 * s + 1) as usize;
        let total = side.pow(n as u32);
        for idx in 0..total {
            // mixed radix, last coordinate fastest
            let mut v = vec![0i64; n];
            let mut r = idx;
            for x in v.iter_mut().rev() {
                *x = (r % side) as i64 - s;
                r /= side;
            }
            let sup = v.iter().map(|x| x.abs()).max().unwrap_or(0);
            let first = v.iter().find(|&&x| x != 0).copied();
            if sup == s && (!canonical || first.is_some_and(|x| x > 0)) {
                out.push(v);
            }
        }
    }
    out
}

fn dot_contains_zero(logs: &[Interval], e: &[i64], offset: &Interval) -> bool {
    let mut acc = offset.clone();
    for (l, &k) in logs.iter().zip(e) {
        if k != 0 {
            acc = acc.add(&l.mul(&Interval::from_i64(k), LOG_PREC), LOG_PREC);
        }
    }
    acc.contains_zero()
}

/// A nonzero `e` with `|e|_inf <= bound` and `prod g_i^{e_i}` torsion.
pub fn find_relation(gens: &[AlgebraicNumber], bound: u64, max_bits: u64) -> Result<Option<Vec<i64>>> {
    if bound == 0 {
        return Err(Error::PreconditionViolated("relation bound must be positive".into()));
    }
    let logs = gens.iter().map(|g| log_abs(g, max_bits)).collect::<Result<Vec<_>>>()?;
    for e in box_vectors(gens.len(), bound as i64, true) {
        // A torsion product has absolute value 1 at every embedding.
        if !dot_contains_zero(&logs, &e, &Interval::zero()) {
            continue;
        }
        if power_product(gens, &e, max_bits)?.is_torsion().is_some() {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

/// A witness `(m, e)` with `alpha^m prod g_i^{-e_i}` torsion, preferring
/// witnesses where the residual is exactly 1.
pub fn gamma_div_member(
    a: &AlgebraicNumber,
    g: &SubgroupSpec,
    m_max: u64,
    e_max: u64,
    max_bits: u64,
) -> Result<Option<(u64, Vec<i64>)>> {
    if m_max == 0 || e_max == 0 {
        return Err(Error::PreconditionViolated("m_max and e_max must be positive".into()));
    }
    let la = log_abs(a, max_bits)?;
    let logs = g
        .gens
        .iter()
        .map(|x| log_abs(x, max_bits).map(|l| l.neg()))
        .collect::<Result<Vec<_>>>()?;
    let vectors = box_vectors(g.gens.len(), e_max as i64, false);
    let mut powers = Vec::with_capacity(m_max as usize);
    let mut candidates = Vec::new();
    for m in 1..=m_max {
        let am = a.pow_int(m as i64, max_bits)?;
        let offset = la.mul(&Interval::from_i64(m as i64), LOG_PREC);
        for e in &vectors {
            if dot_contains_zero(&logs, e, &offset) {
                candidates.push((m, e.clone()));
            }
        }
        powers.push(am);
    }
    let mut residuals = Vec::with_capacity(candidates.len());
    for (m, e) in &candidates {
        let q = power_product(&g.gens, e, max_bits)?;
        let r = powers[*m as usize - 1].div(&q, max_bits)?;
        if r.is_one() {
            return Ok(Some((*m, e.clone())));
        }
        residuals.push(r);
    }
    for ((m, e), r) in candidates.into_iter().zip(residuals) {
        if r.is_torsion().is_some() {
            return Ok(Some((m, e)));
        }
    }
    Ok(None)
}
