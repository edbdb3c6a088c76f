//! The height relative to a subgroup: certified upper bounds by
//! branch-and-bound over rational exponent vectors, simultaneous Dirichlet
//! approximation, and the explicit constant of the double-weak lower bound.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::algnum::AlgebraicNumber;
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::heights::{weil_height, HeightInterval};
use crate::interval::Interval;
use crate::subgroup::{gamma_div_member, power_product, SubgroupSpec, DEFAULT_E_MAX, DEFAULT_M_MAX};

const PREC: u64 = 128;

/// The rational vector `numerators / denom`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentVector {
    pub numerators: Vec<i64>,
    pub denom: u64,
}

impl ExponentVector {
    pub fn new(numerators: Vec<i64>, denom: u64) -> Result<ExponentVector> {
        if denom == 0 {
            return Err(Error::PreconditionViolated("denominator must be positive".into()));
        }
        Ok(ExponentVector { numerators, denom })
    }

    pub fn zero(n: usize) -> ExponentVector {
        ExponentVector { numerators: vec![0; n], denom: 1 }
    }

    pub fn len(&self) -> usize {
        self.numerators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numerators.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.numerators.iter().all(|&p| p == 0)
    }

    pub fn to_rationals(&self) -> Vec<BigRational> {
        self.numerators
            .iter()
            .map(|&p| BigRational::new(BigInt::from(p), BigInt::from(self.denom)))
            .collect()
    }

    /// `|self - o|_inf` as an exact rational.
    pub fn sup_distance(&self, o: &ExponentVector) -> BigRational {
        self.to_rationals()
            .into_iter()
            .zip(o.to_rationals())
            .map(|(a, b)| (a - b).abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }

    fn coords_f64(&self) -> Vec<f64> {
        self.numerators.iter().map(|&p| p as f64 / self.denom as f64).collect()
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.numerators.iter().map(i64::to_string).collect();
        write!(f, "exp:[{}]/{}", parts.join(","), self.denom)
    }
}

impl Serialize for ExponentVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `f(a) = h(alpha g_1^{a_1} ... g_n^{a_n})`, computed as
/// `(1/m) h(alpha^m prod g_i^{p_i})` for `a = p/m`.
pub fn f_eval(
    a: &AlgebraicNumber,
    g: &SubgroupSpec,
    e: &ExponentVector,
    tol: &Dyadic,
    max_bits: u64,
) -> Result<HeightInterval> {
    if e.len() != g.gens.len() {
        return Err(Error::PreconditionViolated(format!(
            "exponent vector has length {}, subgroup has {} generators",
            e.len(),
            g.gens.len()
        )));
    }
    let m = e.denom;
    let base = a.pow_int(m as i64, max_bits)?;
    let prod = power_product(&g.gens, &e.numerators, max_bits)?;
    let x = base.mul(&prod, max_bits)?;
    let t = tol * &Dyadic::from(m as i64);
    Ok(weil_height(&x, &t, max_bits)?.div_int(m, PREC))
}

/// Outcome of [`hgamma_upper_search`].
#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub best_value: HeightInterval,
    pub best_at: ExponentVector,
    pub nodes_visited: u64,
    pub exhaustive_over: String,
}

#[derive(Clone)]
struct GridPoint {
    e: ExponentVector,
    coords: Vec<f64>,
}

impl GridPoint {
    fn sup(&self) -> i64 {
        self.e.numerators.iter().map(|p| p.abs()).max().unwrap_or(0)
    }

    /// Tie-break order: denominator, then sup norm, then lexicographic.
    fn key_cmp(&self, o: &GridPoint) -> Ordering {
        self.e
            .denom
            .cmp(&o.e.denom)
            .then(self.sup().cmp(&o.sup()))
            .then(self.e.numerators.cmp(&o.e.numerators))
    }

    fn dist(&self, o: &GridPoint) -> f64 {
        self.coords
            .iter()
            .zip(&o.coords)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// All `p/m` in lowest terms with `m <= m_max` and `|p_i| <= e_max m`.
fn grid(n: usize, m_max: u64, e_max: u64) -> Vec<GridPoint> {
    let mut out = Vec::new();
    for m in 1..=m_max {
        let r = (e_max * m) as i64;
        let side = (2 * r + 1) as u64;
        let total = side.pow(n as u32);
        for idx in 0..total {
            let mut v = vec![0i64; n];
            let mut k = idx;
            for x in v.iter_mut().rev() {
                *x = (k % side) as i64 - r;
                k /= side;
            }
            let g = v.iter().fold(m as i64, |acc, &p| acc.gcd(&p));
            if g != 1 {
                continue;
            }
            let e = ExponentVector { numerators: v, denom: m };
            let coords = e.coords_f64();
            out.push(GridPoint { e, coords });
        }
    }
    out
}

/// Slack absorbing floating-point error in the pruning bounds.
fn slack(x: f64) -> f64 {
    1e-12 * (1.0 + x.abs())
}

/// Certified upper bound for `h_Gamma(alpha)`: the minimum of `f` over the
/// grid of exponent vectors with denominator at most `m_max` and entries of
/// absolute value at most `e_max`, found by best-first branch-and-bound with
/// the Lipschitz bound `f(a) >= f(b) - L_Gamma |a - b|_inf`.
pub fn hgamma_upper_search(
    a: &AlgebraicNumber,
    g: &SubgroupSpec,
    m_max: u64,
    e_max: u64,
    tol: &Dyadic,
    max_bits: u64,
) -> Result<SearchResult> {
    if m_max == 0 || e_max == 0 {
        return Err(Error::PreconditionViolated("m_max and e_max must be positive".into()));
    }
    let n = g.gens.len();
    let points = grid(n, m_max, e_max);
    let lip = g.l_gamma.hi().to_f64() * (1.0 + 1e-12);
    let mut lower = vec![0.0f64; points.len()];
    let mut alive = vec![true; points.len()];
    let mut best_hi = f64::INFINITY;
    let mut evaluated: Vec<(usize, HeightInterval)> = Vec::new();
    loop {
        let mut pick: Option<usize> = None;
        for i in 0..points.len() {
            if !alive[i] {
                continue;
            }
            pick = match pick {
                None => Some(i),
                Some(j) => {
                    let better = lower[i] < lower[j]
                        || (lower[i] == lower[j] && points[i].key_cmp(&points[j]) == Ordering::Less);
                    Some(if better { i } else { j })
                }
            };
        }
        let Some(i) = pick else { break };
        alive[i] = false;
        let v = f_eval(a, g, &points[i].e, tol, max_bits)?;
        let lo = v.lo().to_f64();
        let hi = v.hi().to_f64();
        best_hi = best_hi.min(hi + slack(hi));
        evaluated.push((i, v));
        for j in 0..points.len() {
            if !alive[j] {
                continue;
            }
            let b = lo - slack(lo) - lip * points[i].dist(&points[j]);
            if b > lower[j] {
                lower[j] = b;
            }
            if lower[j] >= best_hi {
                alive[j] = false;
            }
        }
    }
    let min_hi = evaluated
        .iter()
        .map(|(_, v)| v.hi().clone())
        .min()
        .expect("the grid contains the zero vector");
    let (bi, bv) = evaluated
        .iter()
        .filter(|(_, v)| *v.lo() <= min_hi)
        .min_by(|(i, _), (j, _)| points[*i].key_cmp(&points[*j]))
        .expect("the minimizer overlaps itself");
    Ok(SearchResult {
        best_value: bv.clone(),
        best_at: points[*bi].e.clone(),
        nodes_visited: evaluated.len() as u64,
        exhaustive_over: format!("denominators 1..={m_max}, |a_i| <= {e_max}, {} grid points", points.len()),
    })
}

fn round_half_even(x: &BigRational) -> BigInt {
    let fl = x.floor();
    let frac = x - &fl;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let base = fl.to_integer();
    match frac.cmp(&half) {
        Ordering::Less => base,
        Ordering::Greater => base + 1,
        Ordering::Equal => {
            if base.is_even() {
                base
            } else {
                base + 1
            }
        }
    }
}

/// The least `m <= floor(Q^n)` for which the nearest point `b` of
/// `(1/m) Z^n` satisfies `|a - b|_inf <= 1/(Q m)`, with ties rounded to even
/// numerators.
pub fn dirichlet_approx(a: &[BigRational], q: &BigRational) -> Result<(u64, ExponentVector)> {
    if *q <= BigRational::one() {
        return Err(Error::PreconditionViolated("Q must exceed 1".into()));
    }
    let n = a.len();
    let limit = num_traits::pow(q.clone(), n).floor().to_integer();
    let inv_q = q.recip();
    let mut m = BigInt::one();
    while m <= limit {
        let mr = BigRational::from_integer(m.clone());
        let mut nums = Vec::with_capacity(n);
        let mut ok = true;
        for x in a {
            let y = x * &mr;
            let p = round_half_even(&y);
            if (y - BigRational::from_integer(p.clone())).abs() > inv_q {
                ok = false;
                break;
            }
            nums.push(p);
        }
        if ok {
            let numerators = nums
                .iter()
                .map(|p| p.to_i64().ok_or_else(|| Error::OutOfRange("numerator exceeds 64 bits".into())))
                .collect::<Result<Vec<_>>>()?;
            let mu = m.to_u64().expect("m is bounded by the search");
            return Ok((mu, ExponentVector { numerators, denom: mu }));
        }
        m += 1;
    }
    unreachable!("Dirichlet's theorem guarantees a solution with m <= Q^n")
}

/// The explicit constant and the inner minimization behind it.
#[derive(Clone, Debug, Serialize)]
pub struct RemondConstant {
    /// Certified lower bound for `C_Gamma(eps)`.
    pub value: Dyadic,
    /// Certified lower bound for `c(delta)`, `delta = eps / (n + 1)`.
    pub inner: Dyadic,
    /// The integer `d` attaining the scanned minimum of `c(delta)`.
    pub argmin: u64,
    pub delta: String,
}

fn rational_parts(r: &BigRational) -> Result<(i64, u32)> {
    let p = r.numer().to_i64().ok_or_else(|| Error::OutOfRange("exponent numerator too large".into()))?;
    let q = r.denom().to_u32().ok_or_else(|| Error::OutOfRange("exponent denominator too large".into()))?;
    Ok((p, q))
}

/// `(1/4) (log log d / log d)^3 d^delta` for integer `d >= 3`.
fn inner_term(d: u64, p: i64, q: u32, prec: u64) -> Interval {
    let di = Interval::from_i64(d as i64);
    let l = di.ln(prec);
    let ll = l.ln(prec);
    let r = ll.div(&l, prec).pow_u(3, prec);
    r.mul(&di.pow_ratio(p, q, prec), prec).shl(-2)
}

/// Lower bound of the same expression over `d in [2^ja, 2^jb]`, valid where
/// `log log d / log d` is decreasing (`d >= 16`).
fn inner_piece_lower(ja: u64, jb: u64, p: i64, q: u32, prec: u64) -> Dyadic {
    let lb = crate::interval::ln2(prec).mul(&Interval::from_i64(jb as i64), prec);
    let r = lb.ln(prec).div(&lb, prec).pow_u(3, prec);
    let da = Interval::point(Dyadic::pow2(ja as i64)).pow_ratio(p, q, prec);
    r.mul(&da, prec).shl(-2).lo
}

const INTEGER_SCAN: u64 = 4096;

/// Certified lower bound for `c(delta) = min_{d >= 3} (1/4)(log log d / log d)^3 d^delta`.
///
/// For `log d >= max(3/delta, e)` the expression is increasing in `d`, so the
/// scan stops there: integers up to 4096 are evaluated directly and the rest
/// of the range is covered by dyadic pieces with monotone bounds.
pub fn inner_constant(delta: &BigRational) -> Result<(Dyadic, u64)> {
    if !delta.is_positive() {
        return Err(Error::PreconditionViolated("delta must be positive".into()));
    }
    let (p, q) = rational_parts(delta)?;
    let u_star = (3.0 / delta.to_f64().unwrap_or(f64::MIN_POSITIVE)).max(std::f64::consts::E);
    // one extra unit keeps the rounded turning point on the safe side
    let d_star = u_star.exp().ceil() + 1.0;
    let last = if d_star < INTEGER_SCAN as f64 { d_star as u64 } else { INTEGER_SCAN };
    let mut best: Option<(Dyadic, u64)> = None;
    for d in 3..=last {
        let lo = inner_term(d, p, q, PREC).lo;
        if best.as_ref().is_none_or(|(b, _)| lo < *b) {
            best = Some((lo, d));
        }
    }
    let (mut value, argmin) = best.expect("the scan covers d = 3");
    if d_star >= INTEGER_SCAN as f64 {
        let j_end = (u_star / std::f64::consts::LN_2).ceil() as u64 + 1;
        let mut ja = 12u64;
        while ja < j_end {
            let jb = (ja + ja / 32).max(ja + 1);
            let lo = inner_piece_lower(ja, jb, p, q, PREC);
            if lo < value {
                value = lo;
            }
            ja = jb;
        }
    }
    Ok((value, argmin))
}

/// Certified lower bound for
/// `C_Gamma(eps) = (c(delta) / k^{1+delta})^{n+1} / (1 + L_Gamma)^{n+1}`
/// with `delta = eps / (n + 1)`.
pub fn remond_constant(g: &SubgroupSpec, k_deg: u64, eps: &BigRational) -> Result<RemondConstant> {
    if !eps.is_positive() {
        return Err(Error::PreconditionViolated("epsilon must be positive".into()));
    }
    if k_deg == 0 {
        return Err(Error::PreconditionViolated("field degree must be positive".into()));
    }
    let n = g.gens.len() as u32;
    let delta = eps / BigRational::from_integer(BigInt::from(n + 1));
    let (c, argmin) = inner_constant(&delta)?;
    let (p, q) = rational_parts(&delta)?;
    let k = Interval::from_i64(k_deg as i64);
    let kpow = k.mul(&k.pow_ratio(p, q, PREC), PREC);
    let base = Interval::point(c.clone()).div(&kpow, PREC);
    let one_l = Interval::from_i64(1).add(&Interval::point(g.l_gamma.hi().clone()), PREC);
    let v = base.pow_u(n + 1, PREC).div(&one_l.pow_u(n + 1, PREC), PREC);
    Ok(RemondConstant { value: v.lo, inner: c, argmin, delta: delta.to_string() })
}

/// Three-valued outcome of a one-sided check on intervals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Indeterminate,
}

#[derive(Clone, Debug, Serialize)]
pub struct DoubleWeakReport {
    pub holds: Verdict,
    pub lhs: HeightInterval,
    pub rhs_lo: Dyadic,
    pub rhs_hi: Dyadic,
    pub constant: RemondConstant,
    pub search: SearchResult,
}

/// Search parameters for the double-weak check.
#[derive(Clone, Debug)]
pub struct SearchParams {
    pub m_max: u64,
    pub e_max: u64,
    pub member_m_max: u64,
    pub member_e_max: u64,
    pub k_deg: u64,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams { m_max: 2, e_max: 2, member_m_max: DEFAULT_M_MAX, member_e_max: DEFAULT_E_MAX, k_deg: 1 }
    }
}

/// Compare the searched upper bound for `h_Gamma(alpha)` with
/// `C_Gamma(eps) / d^{n + 1 + eps}`.
pub fn verify_doubleweak(
    a: &AlgebraicNumber,
    g: &SubgroupSpec,
    eps: &BigRational,
    params: &SearchParams,
    tol: &Dyadic,
    max_bits: u64,
) -> Result<DoubleWeakReport> {
    let d = a.degree() as u64;
    if d < 3 {
        return Err(Error::PreconditionViolated(format!("degree {d} is below 3")));
    }
    if let Some((m, e)) = gamma_div_member(a, g, params.member_m_max, params.member_e_max, max_bits)? {
        return Err(Error::PreconditionViolated(format!("alpha^{m} lies in the subgroup up to torsion, exponents {e:?}")));
    }
    let constant = remond_constant(g, params.k_deg, eps)?;
    let search = hgamma_upper_search(a, g, params.m_max, params.e_max, tol, max_bits)?;
    let n = g.gens.len() as u32;
    let (p, q) = rational_parts(eps)?;
    let di = Interval::from_i64(d as i64);
    let dpow = di.pow_u(n + 1, PREC).mul(&di.pow_ratio(p, q, PREC), PREC);
    let rhs = Interval::point(constant.value.clone()).div(&dpow, PREC);
    let lhs = search.best_value.clone();
    let holds = if *lhs.lo() >= rhs.hi {
        Verdict::Holds
    } else if *lhs.hi() < rhs.lo {
        Verdict::Fails
    } else {
        Verdict::Indeterminate
    };
    Ok(DoubleWeakReport { holds, lhs, rhs_lo: rhs.lo, rhs_hi: rhs.hi, constant, search })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algnum::DEFAULT_MAX_BITS as MB;
    use crate::heights::default_tol;
    use crate::interval::ComplexBox;
    use crate::poly::IntPoly;
    use crate::subgroup::make_subgroup;

    fn int(n: i64) -> AlgebraicNumber {
        AlgebraicNumber::from_i64(n, 1).unwrap()
    }

    fn root(c: &[i64], b: &str) -> AlgebraicNumber {
        AlgebraicNumber::from_poly_root(&IntPoly::from_i64s(c), &ComplexBox::parse(b).unwrap(), MB).unwrap()
    }

    fn two() -> SubgroupSpec {
        make_subgroup(vec![int(2)], 20, &default_tol(), MB).unwrap()
    }

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    fn ev(p: &[i64], m: u64) -> ExponentVector {
        ExponentVector::new(p.to_vec(), m).unwrap()
    }

    #[test]
    fn f_values() {
        let g = two();
        let t = default_tol();
        let l3 = 3f64.ln();
        assert!((f_eval(&int(3), &g, &ev(&[0], 1), &t, MB).unwrap().mid_f64() - l3).abs() < 1e-10);
        assert!((f_eval(&int(3), &g, &ev(&[-1], 2), &t, MB).unwrap().mid_f64() - l3).abs() < 1e-10);
        assert!((f_eval(&int(3), &g, &ev(&[1], 1), &t, MB).unwrap().mid_f64() - 6f64.ln()).abs() < 1e-10);
        let a = f_eval(&int(3), &g, &ev(&[1], 3), &t, MB).unwrap();
        let b = f_eval(&int(3), &g, &ev(&[2], 6), &t, MB).unwrap();
        assert!(a.overlaps(&b));
    }

    #[test]
    fn search_examples() {
        let g = two();
        let t = default_tol();
        let r = hgamma_upper_search(&int(3), &g, 4, 8, &t, MB).unwrap();
        assert!((r.best_value.mid_f64() - 3f64.ln()).abs() < 1e-9);
        assert!(r.best_at.is_zero());
        let r = hgamma_upper_search(&int(2), &g, 2, 2, &t, MB).unwrap();
        assert!(r.best_value.is_exact_zero());
        assert_eq!(r.best_at, ev(&[-1], 1));
        let s2 = root(&[-2, 0, 1], "1.4,1.5,0,0");
        let r = hgamma_upper_search(&s2, &g, 2, 2, &t, MB).unwrap();
        assert!(r.best_value.is_exact_zero());
        assert_eq!(r.best_at, ev(&[-1], 2));
    }

    #[test]
    fn dirichlet_examples() {
        assert_eq!(dirichlet_approx(&[rat(5, 7)], &rat(2, 1)).unwrap(), (1, ev(&[1], 1)));
        assert_eq!(dirichlet_approx(&[rat(1, 3), rat(1, 2)], &rat(2, 1)).unwrap(), (1, ev(&[0, 0], 1)));
        assert_eq!(dirichlet_approx(&vec![rat(0, 1); 3], &rat(5, 1)).unwrap(), (1, ev(&[0, 0, 0], 1)));
        assert_eq!(dirichlet_approx(&[rat(3, 4)], &rat(3, 1)).unwrap(), (1, ev(&[1], 1)));
        assert_eq!(dirichlet_approx(&[rat(1, 2)], &rat(3, 1)).unwrap(), (2, ev(&[1], 2)));
        assert_eq!(round_half_even(&rat(5, 2)), BigInt::from(2));
        assert_eq!(round_half_even(&rat(-3, 2)), BigInt::from(-2));
    }

    #[test]
    fn constant_values() {
        let (c, d) = inner_constant(&rat(3, 4)).unwrap();
        assert_eq!(d, 3);
        assert!((c.to_f64() - 3.576e-4).abs() < 1e-6);
        let k = remond_constant(&two(), 1, &rat(3, 2)).unwrap();
        assert!((k.value.to_f64() - 4.46e-8).abs() < 1e-9);
        let k2 = remond_constant(&two(), 2, &rat(3, 2)).unwrap();
        assert!(k2.value < k.value);
        // small delta exercises the piecewise tail
        let (c, _) = inner_constant(&rat(1, 10)).unwrap();
        assert!(c.is_positive());
    }

    #[test]
    fn doubleweak() {
        let a = root(&[-1, -1, 0, 1], "1.3,1.4,0,0");
        let r = verify_doubleweak(&a, &two(), &rat(3, 2), &SearchParams::default(), &default_tol(), MB).unwrap();
        assert_eq!(r.holds, Verdict::Holds);
        assert!((r.lhs.mid_f64() - 0.0937).abs() < 1e-3);
        assert!((r.rhs_lo.to_f64() - 9.5e-10).abs() < 2e-11);
        let u = root(&[-1, -2, 1], "2.4,2.5,0,0");
        assert!(matches!(
            verify_doubleweak(&u, &two(), &rat(3, 2), &SearchParams::default(), &default_tol(), MB),
            Err(Error::PreconditionViolated(_))
        ));
    }
}
