//! Number fields given by a primitive element, conjugates over a field, and
//! the quantities `W_k`, `V_k` together with the power and Capelli tests.
//!
//! Factorization over `k = Q(theta)` uses the norm method: for a shift `s`
//! with `Res_t(T(t), f(x - s t))` squarefree, its irreducible rational factors
//! correspond one-to-one with the irreducible factors of `f` over `k`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algnum::{locate_among, select_root, AlgebraicNumber};
use crate::cyclotomic::cyclotomic_index;
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::factor::{distinct_factors, factor};
use crate::heights::{poly_height, weil_height, HeightInterval};
use crate::interval::{ComplexBox, Interval};
use crate::poly::IntPoly;
use crate::resultant::{quotient_poly, resultant_y, BiPoly};
use crate::roots::RootSet;

/// A number field `Q(theta)`.
#[derive(Clone, Debug)]
pub struct NumberField {
    generator: AlgebraicNumber,
}

impl NumberField {
    pub fn new(generator: AlgebraicNumber) -> NumberField {
        NumberField { generator }
    }

    pub fn rationals() -> NumberField {
        NumberField::new(AlgebraicNumber::one())
    }

    pub fn generator(&self) -> &AlgebraicNumber {
        &self.generator
    }

    pub fn degree(&self) -> usize {
        self.generator.degree()
    }

    pub fn is_rationals(&self) -> bool {
        self.degree() == 1
    }
}

/// An element `sum c_i theta^i` of a number field.
#[derive(Clone, Debug)]
pub struct FieldElement {
    field: NumberField,
    coords: Vec<BigRational>,
}

impl FieldElement {
    pub fn new(field: &NumberField, mut coords: Vec<BigRational>) -> Result<FieldElement> {
        let n = field.degree();
        if coords.len() > n {
            return Err(Error::Parse(format!("element has {} coordinates, field degree is {n}", coords.len())));
        }
        coords.resize(n, BigRational::zero());
        Ok(FieldElement { field: field.clone(), coords })
    }

    pub fn from_rational(field: &NumberField, r: BigRational) -> FieldElement {
        let mut coords = vec![BigRational::zero(); field.degree()];
        coords[0] = r;
        FieldElement { field: field.clone(), coords }
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coords[1..].iter().all(Zero::is_zero) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    /// `(P, D)` with `self = P(theta) / D`, `D > 0`.
    fn integral_form(&self) -> (IntPoly, BigInt) {
        let den = self
            .coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let p = self
            .coords
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        (IntPoly::new(p), den)
    }

    /// The element as an algebraic number.
    pub fn to_algebraic(&self, max_bits: u64) -> Result<AlgebraicNumber> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        if let Some(r) = self.as_rational() {
            return AlgebraicNumber::from_ratio(&r);
        }
        let (p, den) = self.integral_form();
        // Res_t(T(t), D x - P(t))
        let mut cols: Vec<IntPoly> = p.coeffs().iter().map(|c| IntPoly::constant(-c)).collect();
        cols[0] = IntPoly::linear(den.clone(), -p.coeff(0));
        let chr = resultant_y(self.field.generator.minpoly(), &BiPoly::new(cols));
        let theta = self.field.generator.clone();
        select_root(
            distinct_factors(&chr),
            |bits| {
                let prec = bits + 16;
                let t = theta.enclosure(bits + 16, max_bits)?;
                let v = p.eval_box(&t, prec);
                Ok(v.scale(&Interval::from_ratio(&BigRational::from_integer(den.clone()).recip(), prec), prec))
            },
            max_bits,
        )
    }
}

/// `sum_k F_k(t) (x - s t)^k` for `F = sum_k F_k(t) x^k`, as a polynomial in `t`.
fn shifted_bivariate(fx: &[IntPoly], s: i64) -> BiPoly {
    let deg_x = fx.len().saturating_sub(1);
    let deg_t = fx.iter().map(IntPoly::degree).max().unwrap_or(0) + deg_x;
    let mut grid = vec![vec![BigInt::zero(); deg_x + 1]; deg_t + 1];
    let ms = BigInt::from(-s);
    for (k, fk) in fx.iter().enumerate() {
        let mut binom = BigInt::one();
        let mut spow = BigInt::one();
        for j in 0..=k {
            let w = &binom * &spow;
            for (a, c) in fk.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    grid[a + j][k - j] += c * &w;
                }
            }
            binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
            spow *= &ms;
        }
    }
    BiPoly::new(grid.into_iter().map(IntPoly::new).collect())
}

/// Shifts tried in order: 1, -1, 2, -2, ...
fn shifts() -> impl Iterator<Item = i64> {
    (1..).flat_map(|k| [k, -k])
}

const MAX_SHIFT: i64 = 64;

/// A squarefree shifted norm and its rational factorization.
fn squarefree_norm(t: &IntPoly, fx: &[IntPoly]) -> Result<(i64, IntPoly)> {
    for s in shifts() {
        if s.abs() > MAX_SHIFT {
            break;
        }
        let n = resultant_y(t, &shifted_bivariate(fx, s)).primitive();
        if n.is_squarefree() {
            return Ok((s, n));
        }
    }
    Err(Error::DegenerateField("no squarefree norm found".into()))
}

/// Which norm factor each `alpha_j + s theta_i` belongs to.
struct Splitting {
    /// Conjugates of `alpha` over `Q`, `alpha` first.
    alphas: Vec<AlgebraicNumber>,
    /// `assign[i][j]`: factor index for `theta_i`, `alpha_j`.
    assign: Vec<Vec<usize>>,
}

impl Splitting {
    fn compute(a: &AlgebraicNumber, k: &NumberField, max_bits: u64) -> Result<Splitting> {
        let alphas = a.conjugates();
        let thetas = k.generator.conjugates();
        let fx: Vec<IntPoly> = a.minpoly().coeffs().iter().map(|c| IntPoly::constant(c.clone())).collect();
        let (s, norm) = squarefree_norm(k.generator.minpoly(), &fx)?;
        let factors = distinct_factors(&norm);
        let mut sets = Vec::with_capacity(factors.len());
        for f in &factors {
            sets.push(RootSet::isolate(f, max_bits)?);
        }
        let sd = Interval::from_i64(s);
        let mut assign = Vec::with_capacity(thetas.len());
        for th in &thetas {
            let mut row = Vec::with_capacity(alphas.len());
            for al in &alphas {
                let (f, _) = locate_among(
                    &mut sets,
                    |bits| {
                        let prec = bits + 16;
                        let x = al.enclosure(bits + 8, max_bits)?;
                        let y = th.enclosure(bits + 8, max_bits)?;
                        Ok(x.add(&y.scale(&sd, prec), prec))
                    },
                    max_bits,
                )?;
                row.push(f);
            }
            assign.push(row);
        }
        let l = assign[0][0];
        let count = assign[0].iter().filter(|&&f| f == l).count();
        if factors[l].degree() != count * k.degree() {
            return Err(Error::DegenerateField("norm factor degree mismatch".into()));
        }
        Ok(Splitting { alphas, assign })
    }

    fn conjugate_indices(&self, i: usize) -> Vec<usize> {
        let l = self.assign[0][0];
        (0..self.alphas.len()).filter(|&j| self.assign[i][j] == l).collect()
    }
}

/// Conjugates of `alpha` over `k`, `alpha` first.
pub fn conjugates_over_k(a: &AlgebraicNumber, k: &NumberField, max_bits: u64) -> Result<Vec<AlgebraicNumber>> {
    if k.is_rationals() || a.degree() == 1 {
        return Ok(a.conjugates());
    }
    let sp = Splitting::compute(a, k, max_bits)?;
    Ok(sp.conjugate_indices(0).into_iter().map(|j| sp.alphas[j].clone()).collect())
}

/// The irreducible factors of `Res_y(f(y), f(xy)) / (x - 1)^d`, whose roots
/// are the ratios `alpha_i / alpha_j` of distinct conjugates, together with a
/// local copy of the roots of `f` so that each ratio can be assigned to its
/// factor by evaluation instead of isolating the (large) factors themselves.
struct Ratios {
    roots: RootSet,
    factors: Vec<(IntPoly, u32)>,
}

impl Ratios {
    fn new(a: &AlgebraicNumber) -> Ratios {
        let f = a.minpoly();
        let mut r = quotient_poly(f, f);
        let x1 = IntPoly::linear(BigInt::one(), -BigInt::one());
        for _ in 0..f.degree() {
            r = r.div_exact(&x1).expect("each diagonal ratio contributes x - 1");
        }
        let factors = factor(&r).into_iter().map(|(g, m)| (g.primitive(), m)).collect();
        Ratios { roots: a.root_set().clone(), factors }
    }

    fn ratio_box(&mut self, i: usize, j: usize, bits: u64, max_bits: u64) -> Result<ComplexBox> {
        let mut b = bits;
        loop {
            self.roots.refine_to(b, max_bits)?;
            let den = self.roots.root_box(j);
            if !den.contains_zero() {
                return Ok(self.roots.root_box(i).div(den, b + 32));
            }
            b *= 2;
        }
    }

    /// Index of the factor vanishing at `alpha_i / alpha_j`.
    fn factor_of(&mut self, i: usize, j: usize, max_bits: u64) -> Result<usize> {
        if self.factors.len() == 1 {
            return Ok(0);
        }
        let mut bits = 64;
        loop {
            let z = self.ratio_box(i, j, bits, max_bits)?;
            let hits: Vec<usize> = (0..self.factors.len())
                .filter(|&k| self.factors[k].0.eval_box(&z, bits + 32).contains_zero())
                .collect();
            if hits.len() == 1 {
                return Ok(hits[0]);
            }
            bits *= 2;
            if bits > max_bits {
                return Err(Error::PrecisionExhausted(max_bits));
            }
        }
    }

    /// Height of the roots of factor `k`, from the moduli of the conjugates
    /// of `alpha`: `log M(g) = log |lc g| + sum log max(1, |alpha_i / alpha_j|)`
    /// over the pairs belonging to `g`, each root counted once.
    fn height(&mut self, k: usize, tol: &Dyadic, max_bits: u64) -> Result<HeightInterval> {
        let (g, mult) = self.factors[k].clone();
        if g.degree() == 1 || cyclotomic_index(&g).is_some() {
            return poly_height(&g, tol, max_bits);
        }
        let n = self.roots.len();
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && self.factor_of(i, j, max_bits)? == k {
                    pairs.push((i, j));
                }
            }
        }
        let d = g.degree() as u64;
        if pairs.len() as u64 != d * mult as u64 {
            return Err(Error::DegenerateField("ratio factor degree mismatch".into()));
        }
        let t = tol * &Dyadic::from(d as i64);
        let mut bits = 64u64.max(working_bits(&t));
        loop {
            self.roots.refine_to(bits, max_bits)?;
            let prec = bits + 32;
            let one = Interval::from_i64(1);
            let mut sum = Interval::zero();
            for &(i, j) in &pairs {
                let q = self.roots.root_box(i).norm_sqr(prec).div(&self.roots.root_box(j).norm_sqr(prec), prec);
                if q.hi <= one.hi {
                    continue;
                }
                sum = sum.add(&q.max(&one).ln(prec).shl(-1), prec);
            }
            let lm = Interval::from_int(&g.lead()).ln(prec).add(&sum.div_int(mult as i64, prec), prec);
            if lm.width() <= t {
                return Ok(HeightInterval::new(lm.div_int(d as i64, prec)));
            }
            bits *= 2;
            if bits > max_bits {
                return Err(Error::PrecisionExhausted(max_bits));
            }
        }
    }

    /// Factor indices of `c / alpha` for each conjugate `c` after the first.
    fn of_conjugates(&mut self, a: &AlgebraicNumber, conj: &[AlgebraicNumber], max_bits: u64) -> Result<Vec<usize>> {
        let base = a.root_index();
        conj[1..]
            .iter()
            .map(|c| self.factor_of(c.root_index(), base, max_bits))
            .collect()
    }
}

fn working_bits(tol: &Dyadic) -> u64 {
    (32 - tol.log2_floor().unwrap_or(0).min(0)) as u64
}

/// Ratio table and the distinct factor indices of the conjugate ratios.
fn conjugate_ratios(
    a: &AlgebraicNumber,
    k: &NumberField,
    max_bits: u64,
) -> Result<Option<(Ratios, Vec<usize>)>> {
    let conj = conjugates_over_k(a, k, max_bits)?;
    if conj.len() <= 1 {
        return Ok(None);
    }
    let mut ratios = Ratios::new(a);
    let mut idx = ratios.of_conjugates(a, &conj, max_bits)?;
    idx.sort_unstable();
    idx.dedup();
    Ok(Some((ratios, idx)))
}

/// `W_k(alpha) = max_sigma h(sigma(alpha) / alpha)` over conjugates over `k`.
pub fn w_height(a: &AlgebraicNumber, k: &NumberField, tol: &Dyadic, max_bits: u64) -> Result<HeightInterval> {
    let mut best = HeightInterval::zero();
    if let Some((mut ratios, idx)) = conjugate_ratios(a, k, max_bits)? {
        for i in idx {
            best = best.max(&ratios.height(i, tol, max_bits)?);
        }
    }
    Ok(best)
}

/// Lower bound `W_k / 2` for `V_k`.
pub fn v_lower(a: &AlgebraicNumber, k: &NumberField, tol: &Dyadic, max_bits: u64) -> Result<HeightInterval> {
    let t = tol.shl(1);
    let w = w_height(a, k, &t, max_bits)?;
    Ok(HeightInterval::new(w.interval().shl(-1)))
}

/// Upper bound `(1/n) h(alpha^n / N)` for `V_k`, where `N` is the product of
/// the `n` conjugates of `alpha` over `k`.
pub fn v_upper_norm_trick(a: &AlgebraicNumber, k: &NumberField, tol: &Dyadic, max_bits: u64) -> Result<HeightInterval> {
    if a.degree() == 1 {
        return Ok(HeightInterval::zero());
    }
    let quotient = if k.is_rationals() {
        let f = a.minpoly();
        let d = f.degree();
        let mut norm = BigRational::new(f.coeff(0), f.lead());
        if d % 2 == 1 {
            norm = -norm;
        }
        (a.pow_int(d as i64, max_bits)?.scale(&norm.recip(), max_bits)?, d)
    } else {
        let sp = Splitting::compute(a, k, max_bits)?;
        let n = sp.conjugate_indices(0).len();
        if n == 1 {
            return Ok(HeightInterval::zero());
        }
        let lc = BigRational::from_integer(a.minpoly().lead());
        let scaled_norm = scaled_norm_element(&sp, k, max_bits)?;
        let top = a.scale(&lc, max_bits)?.pow_int(n as i64, max_bits)?;
        (top.div(&scaled_norm, max_bits)?, n)
    };
    let (q, n) = quotient;
    let t = tol * &Dyadic::from(n as i64);
    Ok(weil_height(&q, &t, max_bits)?.div_int(n as u64, 128))
}

/// `lc^n N` as an algebraic number, where `N` is the product of the
/// conjugates over `k`: its conjugates over `Q` are the products over each
/// embedding of `k`, so its characteristic polynomial is monic integral.
fn scaled_norm_element(sp: &Splitting, k: &NumberField, max_bits: u64) -> Result<AlgebraicNumber> {
    let lc = Interval::from_int(&sp.alphas[0].minpoly().lead());
    let rows: Vec<Vec<usize>> = (0..k.degree()).map(|i| sp.conjugate_indices(i)).collect();
    let values = |bits: u64| -> Result<Vec<ComplexBox>> {
        let prec = bits + 32;
        let mut out = Vec::with_capacity(rows.len());
        for row in &rows {
            let mut v = ComplexBox::real(Interval::from_i64(1));
            for &j in row {
                let z = sp.alphas[j].enclosure(bits + 16, max_bits)?.scale(&lc, prec);
                v = v.mul(&z, prec);
            }
            out.push(v);
        }
        Ok(out)
    };
    let mut bits = 64;
    let chr = loop {
        let prec = bits + 32;
        let vals = values(bits)?;
        let mut coeffs = vec![ComplexBox::real(Interval::from_i64(1))];
        for v in &vals {
            let mut next = vec![ComplexBox::real(Interval::zero()); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] = next[i + 1].add(c, prec);
                next[i] = next[i].sub(&c.mul(v, prec), prec);
            }
            coeffs = next;
        }
        let rounded: Option<Vec<BigInt>> = coeffs
            .iter()
            .map(|c| {
                let lo = c.re.lo.to_integer(crate::dyadic::Round::Up);
                let hi = c.re.hi.to_integer(crate::dyadic::Round::Down);
                (c.re.width() < Dyadic::one() && lo == hi).then_some(lo)
            })
            .collect();
        if let Some(ints) = rounded {
            break IntPoly::new(ints);
        }
        bits *= 2;
        if bits > max_bits {
            return Err(Error::PrecisionExhausted(max_bits));
        }
    };
    select_root(distinct_factors(&chr), |bits| Ok(values(bits)?.swap_remove(0)), max_bits)
}

/// True iff some power of `alpha` lies in `k`: every conjugate ratio over `k`
/// is a root of unity.
pub fn in_k_div(a: &AlgebraicNumber, k: &NumberField, max_bits: u64) -> Result<bool> {
    Ok(match conjugate_ratios(a, k, max_bits)? {
        None => true,
        Some((r, idx)) => idx.iter().all(|&i| cyclotomic_index(&r.factors[i].0).is_some()),
    })
}

/// Least `m <= m_max` with `alpha^m` in `k`.
pub fn least_power_in_field(a: &AlgebraicNumber, k: &NumberField, m_max: u64, max_bits: u64) -> Result<Option<u64>> {
    // alpha^m lies in k iff (c/alpha)^m = 1 for every conjugate c over k.
    let mut m = 1u64;
    if let Some((r, idx)) = conjugate_ratios(a, k, max_bits)? {
        for i in idx {
            match cyclotomic_index(&r.factors[i].0) {
                Some(order) => m = m.lcm(&order),
                None => return Ok(None),
            }
        }
    }
    Ok((m <= m_max).then_some(m))
}

fn perfect_power(n: &BigInt, p: u32) -> bool {
    if n.is_negative() {
        return p % 2 == 1 && perfect_power(&-n, p);
    }
    let r = n.nth_root(p);
    num_traits::pow(r, p as usize) == *n
}

/// Whether `sum_k F_k(theta) x^k` has a root in `k`.
fn has_root_in_field(k: &NumberField, fx: &[IntPoly]) -> Result<bool> {
    let (_, norm) = squarefree_norm(k.generator.minpoly(), fx)?;
    Ok(distinct_factors(&norm).iter().any(|g| g.degree() == k.degree()))
}

fn is_pth_power(beta: &FieldElement, p: u32) -> Result<bool> {
    if let Some(r) = beta.as_rational().filter(|_| beta.field.is_rationals()) {
        return Ok(perfect_power(r.numer(), p) && perfect_power(r.denom(), p));
    }
    let (num, den) = beta.integral_form();
    let mut fx = vec![IntPoly::zero(); p as usize + 1];
    fx[0] = num.neg();
    fx[p as usize] = IntPoly::constant(den);
    has_root_in_field(&beta.field, &fx)
}

/// Whether `beta = -4 gamma^4` for some `gamma` in `k`.
fn is_minus_four_fourth_power(beta: &FieldElement) -> Result<bool> {
    if let Some(r) = beta.as_rational().filter(|_| beta.field.is_rationals()) {
        let q = -r / BigRational::from_integer(BigInt::from(4));
        return Ok(!q.is_negative() && perfect_power(q.numer(), 4) && perfect_power(q.denom(), 4));
    }
    // 4 D x^4 + P(theta) = 0
    let (num, den) = beta.integral_form();
    let mut fx = vec![IntPoly::zero(); 5];
    fx[0] = num;
    fx[4] = IntPoly::constant(den * 4u32);
    has_root_in_field(&beta.field, &fx)
}

fn prime_divisors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Capelli's criterion: `x^m - beta` is irreducible over `k` iff `beta` is not
/// a `p`-th power for any prime `p | m`, and not in `-4 k^4` when `4 | m`.
pub fn capelli_irreducible(beta: &FieldElement, m: u64) -> Result<bool> {
    if m == 0 {
        return Err(Error::PreconditionViolated("m must be positive".into()));
    }
    if beta.is_zero() {
        return Err(Error::ZeroInput);
    }
    for p in prime_divisors(m) {
        if is_pth_power(beta, p as u32)? {
            return Ok(false);
        }
    }
    if m % 4 == 0 && is_minus_four_fourth_power(beta)? {
        return Ok(false);
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algnum::DEFAULT_MAX_BITS as MB;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn root(c: &[i64], b: &str) -> AlgebraicNumber {
        AlgebraicNumber::from_poly_root(&p(c), &ComplexBox::parse(b).unwrap(), MB).unwrap()
    }

    fn tol() -> Dyadic {
        crate::heights::default_tol()
    }

    fn q() -> NumberField {
        NumberField::rationals()
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn conjugates_over_quadratic_field() {
        let k = NumberField::new(root(&[-2, 0, 1], "1.4,1.5,0,0"));
        let s2 = root(&[-2, 0, 1], "1.4,1.5,0,0");
        assert_eq!(conjugates_over_k(&s2, &q(), MB).unwrap().len(), 2);
        assert_eq!(conjugates_over_k(&s2, &k, MB).unwrap().len(), 1);
        let r4 = root(&[-2, 0, 0, 0, 1], "1.1,1.3,0,0");
        let c = conjugates_over_k(&r4, &k, MB).unwrap();
        assert_eq!(c.len(), 2);
        let neg = root(&[-2, 0, 0, 0, 1], "-1.3,-1.1,0,0");
        assert!(c[0].equals(&r4, MB).unwrap());
        assert!(c[1].equals(&neg, MB).unwrap());
    }

    #[test]
    fn width_examples() {
        let u = root(&[-1, -2, 1], "2.4,2.5,0,0");
        let w = w_height(&u, &q(), &tol(), MB).unwrap();
        assert!((w.mid_f64() - 0.881373587019543).abs() < 1e-10);
        let vl = v_lower(&u, &q(), &tol(), MB).unwrap();
        assert!((vl.mid_f64() - 0.440686793509772).abs() < 1e-10);
        let vu = v_upper_norm_trick(&u, &q(), &tol(), MB).unwrap();
        assert!((vu.mid_f64() - 0.440686793509772).abs() < 1e-10);
        let s2 = root(&[-2, 0, 1], "1.4,1.5,0,0");
        assert!(w_height(&s2, &q(), &tol(), MB).unwrap().is_exact_zero());
        assert!(v_upper_norm_trick(&s2, &q(), &tol(), MB).unwrap().is_exact_zero());
        let five = AlgebraicNumber::from_i64(5, 1).unwrap();
        assert!(v_upper_norm_trick(&five, &q(), &tol(), MB).unwrap().is_exact_zero());
    }

    #[test]
    fn norm_trick_over_quadratic_field() {
        // alpha = 2^(1/4) over Q(sqrt2): conjugates +-2^(1/4), N = -sqrt2, alpha^2/N = -1.
        let k = NumberField::new(root(&[-2, 0, 1], "1.4,1.5,0,0"));
        let r4 = root(&[-2, 0, 0, 0, 1], "1.1,1.3,0,0");
        assert!(v_upper_norm_trick(&r4, &k, &tol(), MB).unwrap().is_exact_zero());
        assert!(in_k_div(&r4, &k, MB).unwrap());
        // alpha = root of x^4 - x - 1 over Q(sqrt2) stays non-degenerate.
        let a = root(&[-1, -1, 0, 0, 1], "1.2,1.3,0,0");
        let vu = v_upper_norm_trick(&a, &k, &tol(), MB).unwrap();
        let w = w_height(&a, &k, &tol(), MB).unwrap();
        let vl = v_lower(&a, &k, &tol(), MB).unwrap();
        // x^4 - x - 1 stays irreducible over Q(sqrt2), so the sandwich is over 4 conjugates.
        assert_eq!(conjugates_over_k(&a, &k, MB).unwrap().len(), 4);
        assert!(vl.lo() <= vu.hi());
        assert!(vu.hi() <= &(w.hi() + &tol().shl(1)));
    }

    #[test]
    fn membership_and_powers() {
        let s2 = root(&[-2, 0, 1], "1.4,1.5,0,0");
        assert!(in_k_div(&s2, &q(), MB).unwrap());
        let u = root(&[-1, -2, 1], "2.4,2.5,0,0");
        assert!(!in_k_div(&u, &q(), MB).unwrap());
        // zeta_5 * sqrt3 has minimal polynomial x^8 + 3x^6 + 9x^4 + 27x^2 + 81
        let z = root(&[81, 0, 27, 0, 9, 0, 3, 0, 1], "0.5,0.6,1.6,1.7");
        assert!(in_k_div(&z, &q(), MB).unwrap());
        assert_eq!(least_power_in_field(&z, &q(), 24, MB).unwrap(), Some(10));
        let c2 = root(&[-2, 0, 0, 1], "1.2,1.3,0,0");
        assert_eq!(least_power_in_field(&c2, &q(), 10, MB).unwrap(), Some(3));
        let m1 = AlgebraicNumber::from_i64(-1, 1).unwrap();
        assert_eq!(least_power_in_field(&m1, &q(), 10, MB).unwrap(), Some(1));
        assert_eq!(least_power_in_field(&u, &q(), 6, MB).unwrap(), None);
    }

    #[test]
    fn capelli_examples() {
        let e = |n| FieldElement::from_rational(&q(), rat(n));
        assert!(capelli_irreducible(&e(2), 6).unwrap());
        assert!(!capelli_irreducible(&e(4), 2).unwrap());
        assert!(capelli_irreducible(&e(2), 4).unwrap());
        assert!(!capelli_irreducible(&e(-4), 4).unwrap());
        assert!(!capelli_irreducible(&e(-8), 3).unwrap());
        // over Q(sqrt2): x^2 - 2 splits, x^4 - 2 does not
        let k = NumberField::new(root(&[-2, 0, 1], "1.4,1.5,0,0"));
        let two = FieldElement::from_rational(&k, rat(2));
        assert!(!capelli_irreducible(&two, 2).unwrap());
        let s = FieldElement::new(&k, vec![rat(0), rat(1)]).unwrap();
        assert!(capelli_irreducible(&s, 2).unwrap());
        // 3 + 2 sqrt2 = (1 + sqrt2)^2
        let sq = FieldElement::new(&k, vec![rat(3), rat(2)]).unwrap();
        assert!(!capelli_irreducible(&sq, 2).unwrap());
    }

    #[test]
    fn element_to_algebraic() {
        let k = NumberField::new(root(&[-2, 0, 1], "1.4,1.5,0,0"));
        let e = FieldElement::new(&k, vec![rat(1), rat(1)]).unwrap();
        let a = e.to_algebraic(MB).unwrap();
        assert_eq!(a.minpoly(), &p(&[-1, -2, 1]));
        assert!(a.root_box().re.lo > Dyadic::from(2));
    }
}
