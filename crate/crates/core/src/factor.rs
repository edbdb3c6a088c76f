//! Factorization over the integers: squarefree decomposition, factorization modulo
//! a prime, quadratic Hensel lifting along a factor tree, and Zassenhaus
//! recombination with degree-set pruning.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::modp::{self, PolyP};
use crate::poly::IntPoly;

/// Number of good primes sampled for the degree-set test.
const PRIME_SAMPLES: usize = 6;

fn cmp_poly(a: &IntPoly, b: &IntPoly) -> std::cmp::Ordering {
    a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs()))
}

/// Irreducible primitive factors with multiplicities, sorted by degree then
/// coefficients. Content and sign are dropped; constants yield an empty list.
pub fn factor(f: &IntPoly) -> Vec<(IntPoly, u32)> {
    let mut out = Vec::new();
    if f.degree() == 0 {
        return out;
    }
    for (g, m) in f.primitive().squarefree_decomposition() {
        for h in factor_squarefree(&g) {
            out.push((h, m));
        }
    }
    out.sort_by(|a, b| cmp_poly(&a.0, &b.0));
    out
}

/// Distinct irreducible factors (no multiplicities).
pub fn distinct_factors(f: &IntPoly) -> Vec<IntPoly> {
    factor(f).into_iter().map(|(g, _)| g).collect()
}

pub fn is_irreducible(f: &IntPoly) -> bool {
    if f.degree() == 0 {
        return false;
    }
    let g = f.primitive();
    if !g.is_squarefree() {
        return false;
    }
    factor_squarefree(&g).len() == 1
}

/// Factor a primitive squarefree polynomial of positive degree.
pub fn factor_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    let f = f.primitive();
    let n = f.degree();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![f];
    }
    if f.coeff(0).is_zero() {
        let x = IntPoly::linear(BigInt::one(), BigInt::zero());
        let rest = f.div_exact(&x).expect("x divides f");
        let mut out = vec![x];
        out.extend(factor_squarefree(&rest));
        out.sort_by(cmp_poly);
        return out;
    }
    let mut out = zassenhaus(&f);
    out.sort_by(cmp_poly);
    out
}

fn subset_sums(degs: &[usize], n: usize) -> Vec<bool> {
    let mut can = vec![false; n + 1];
    can[0] = true;
    for &d in degs {
        for s in (d..=n).rev() {
            if can[s - d] {
                can[s] = true;
            }
        }
    }
    can
}

fn zassenhaus(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.degree();
    let mut allowed = vec![true; n + 1];
    let mut best: Option<(u64, Vec<PolyP>)> = None;
    let mut sampled = 0;
    for p in modp::primes_from(3) {
        if sampled >= PRIME_SAMPLES {
            break;
        }
        if !modp::is_good_prime(f, p) {
            continue;
        }
        sampled += 1;
        let fp = modp::reduce(f, p);
        let factors = modp::factor_squarefree(&fp, p);
        if factors.len() == 1 {
            return vec![f.clone()];
        }
        let degs: Vec<usize> = factors.iter().map(modp::degree).collect();
        let sums = subset_sums(&degs, n);
        for (a, s) in allowed.iter_mut().zip(sums) {
            *a &= s;
        }
        if !allowed[1..n].iter().any(|&b| b) {
            return vec![f.clone()];
        }
        if best.as_ref().is_none_or(|(_, b)| factors.len() < b.len()) {
            best = Some((p, factors));
        }
    }
    let (p, factors) = best.expect("some good prime exists");
    let bound = coefficient_bound(f);
    let target = &bound * 2u32 + 1u32;
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    let mut levels = 0u32;
    while modulus <= target {
        modulus = &modulus * &modulus;
        levels += 1;
    }
    let lifted = hensel_lift(f, &factors, p, levels);
    recombine(f, lifted, &modulus, &allowed)
}

/// Bound on coefficients of `lc(f)/lc(g) * g` for any factor `g` of `f`.
fn coefficient_bound(f: &IntPoly) -> BigInt {
    let n2 = f.norm2_sqr().sqrt() + 1u32;
    (n2 << f.degree()) * f.lead().abs()
}

fn pmod(f: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn mul_mod(a: &IntPoly, b: &IntPoly, m: &BigInt) -> IntPoly {
    pmod(&a.mul(b), m)
}

/// Division by a monic polynomial mod m.
fn divrem_monic(a: &IntPoly, h: &IntPoly, m: &BigInt) -> (IntPoly, IntPoly) {
    let dh = h.degree();
    debug_assert!(h.lead().mod_floor(m).is_one());
    let mut r: Vec<BigInt> = a.coeffs().to_vec();
    if r.len() <= dh {
        return (IntPoly::zero(), pmod(a, m));
    }
    let mut q = vec![BigInt::zero(); r.len() - dh];
    for k in (0..q.len()).rev() {
        let c = r[k + dh].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (j, hc) in h.coeffs().iter().enumerate() {
            r[k + j] -= &c * hc;
        }
        q[k] = c;
    }
    r.truncate(dh);
    (pmod(&IntPoly::new(q), m), pmod(&IntPoly::new(r), m))
}

fn inv_mod_big(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    assert!(e.gcd.is_one(), "leading coefficient not invertible");
    e.x.mod_floor(m)
}

/// One quadratic Hensel step: from `f = g h mod m` and `s g + t h = 1 mod m`
/// to the same relations mod m^2.
fn hensel_step(
    f: &IntPoly,
    g: &IntPoly,
    h: &IntPoly,
    s: &IntPoly,
    t: &IntPoly,
    m: &BigInt,
) -> (IntPoly, IntPoly, IntPoly, IntPoly) {
    let m2 = m * m;
    let e = pmod(&f.sub(&g.mul(h)), &m2);
    let (q, r) = divrem_monic(&mul_mod(s, &e, &m2), h, &m2);
    let g2 = pmod(&g.add(&t.mul(&e)).add(&q.mul(g)), &m2);
    let h2 = pmod(&h.add(&r), &m2);
    let b = pmod(&s.mul(&g2).add(&t.mul(&h2)).sub(&IntPoly::one()), &m2);
    let (c, d) = divrem_monic(&mul_mod(s, &b, &m2), &h2, &m2);
    let s2 = pmod(&s.sub(&d), &m2);
    let t2 = pmod(&t.sub(&t.mul(&b)).sub(&c.mul(&g2)), &m2);
    (g2, h2, s2, t2)
}

/// Lift `f = lc(f) * prod(factors) mod p` to monic factors mod `p^(2^levels)`.
fn hensel_lift(f: &IntPoly, factors: &[PolyP], p: u64, levels: u32) -> Vec<IntPoly> {
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    for _ in 0..levels {
        modulus = &modulus * &modulus;
    }
    if factors.len() == 1 {
        let inv = inv_mod_big(&f.lead(), &modulus);
        return vec![pmod(&f.scale(&inv), &modulus)];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let lc_p = modp::reduce_int(&f.lead(), p);
    let mut g0: PolyP = vec![lc_p];
    for u in left {
        g0 = modp::mul(&g0, u, p);
    }
    let mut h0: PolyP = vec![1];
    for u in right {
        h0 = modp::mul(&h0, u, p);
    }
    let (one, s0, t0) = modp::ext_gcd(&g0, &h0, p);
    debug_assert_eq!(one, vec![1]);
    let mut g = modp::lift_to_int(&g0);
    let mut h = modp::lift_to_int(&h0);
    let mut s = modp::lift_to_int(&s0);
    let mut t = modp::lift_to_int(&t0);
    let mut m = pb.clone();
    for _ in 0..levels {
        let (g2, h2, s2, t2) = hensel_step(f, &g, &h, &s, &t, &m);
        g = g2;
        h = h2;
        s = s2;
        t = t2;
        m = &m * &m;
    }
    let mut out = hensel_lift(&g, left, p, levels);
    out.extend(hensel_lift(&h, right, p, levels));
    out
}

fn symmetric(f: &IntPoly, m: &BigInt) -> IntPoly {
    let half = m >> 1u32;
    IntPoly::new(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn recombine(f: &IntPoly, lifted: Vec<IntPoly>, m: &BigInt, allowed: &[bool]) -> Vec<IntPoly> {
    let mut remaining = lifted;
    let mut f = f.clone();
    let mut out = Vec::new();
    let mut s = 1;
    'outer: while 2 * s <= remaining.len() {
        let r = remaining.len();
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let deg: usize = idx.iter().map(|&i| remaining[i].degree()).sum();
            if deg < allowed.len() && allowed[deg] {
                let lc = f.lead();
                let mut c0 = lc.clone();
                for &i in &idx {
                    c0 = (c0 * remaining[i].coeff(0)).mod_floor(m);
                }
                let c0 = symmetric(&IntPoly::constant(c0), m).coeff(0);
                let target = &lc * f.coeff(0);
                if !c0.is_zero() && (&target % &c0).is_zero() {
                    let mut g = IntPoly::constant(lc.clone());
                    for &i in &idx {
                        g = mul_mod(&g, &remaining[i], m);
                    }
                    let g = symmetric(&g, m).primitive();
                    if let Some(q) = f.div_exact(&g) {
                        out.push(g);
                        f = q.primitive();
                        let mut keep = Vec::with_capacity(r - s);
                        for (i, u) in remaining.into_iter().enumerate() {
                            if !idx.contains(&i) {
                                keep.push(u);
                            }
                        }
                        remaining = keep;
                        continue 'outer;
                    }
                }
            }
            if !next_combination(&mut idx, r) {
                break;
            }
        }
        s += 1;
    }
    if f.degree() > 0 {
        out.push(f);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn product(fs: &[(IntPoly, u32)]) -> IntPoly {
        let mut r = IntPoly::one();
        for (g, m) in fs {
            r = r.mul(&g.pow(*m));
        }
        r
    }

    #[test]
    fn factors_small_products() {
        let f = p(&[-2, 0, 1]).mul(&p(&[-1, 1]));
        let fs = factor(&f);
        assert_eq!(fs, vec![(p(&[-1, 1]), 1), (p(&[-2, 0, 1]), 1)]);
    }

    #[test]
    fn x4_plus_1_is_irreducible_though_split_mod_every_prime() {
        // x^4+1 has at least two factors mod every prime: pure recombination.
        assert!(is_irreducible(&p(&[1, 0, 0, 0, 1])));
        assert!(is_irreducible(&p(&[-2, 0, 0, 0, 1])));
        assert!(!is_irreducible(&p(&[4, 0, 0, 0, 1]))); // (x^2+2x+2)(x^2-2x+2)
    }

    #[test]
    fn non_monic_and_multiplicities() {
        let a = p(&[3, -2]); // -2x+3
        let b = p(&[1, 1, 5]);
        let c = p(&[-7, 0, 0, 2]);
        let f = a.pow(2).mul(&b).mul(&c).scale(&BigInt::from(6));
        let fs = factor(&f);
        assert_eq!(fs.len(), 3);
        assert_eq!(product(&fs), f.primitive());
        assert!(fs.iter().any(|(g, m)| *g == a.primitive() && *m == 2));
    }

    #[test]
    fn cyclotomic_splitting() {
        // x^12 - 1 = prod of Phi_d for d | 12.
        let f = p(&[-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        let fs = factor(&f);
        assert_eq!(fs.len(), 6);
        assert_eq!(product(&fs), f);
    }

    #[test]
    fn swinnerton_dyer_like() {
        // minimal polynomial of sqrt2 + sqrt3: x^4 - 10x^2 + 1, irreducible.
        assert!(is_irreducible(&p(&[1, 0, -10, 0, 1])));
        let f = p(&[1, 0, -10, 0, 1]).mul(&p(&[-5, 0, 1]));
        assert_eq!(factor(&f).len(), 2);
    }

    #[test]
    fn zero_root_factor() {
        let f = p(&[0, -2, 0, 1]);
        assert_eq!(factor(&f), vec![(p(&[0, 1]), 1), (p(&[-2, 0, 1]), 1)]);
    }
}
