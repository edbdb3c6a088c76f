//! Polynomials over prime fields F_p (p < 2^32), used for modular gcd shortcuts
//! and as the first stage of factorization over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::IntPoly;

/// Coefficients mod p, constant first, no trailing zeros.
pub type PolyP = Vec<u64>;

fn trim(mut v: PolyP) -> PolyP {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "no inverse of zero mod p");
    pow_mod(a, p - 2, p)
}

/// Primes `>= start` in increasing order.
pub fn primes_from(start: u64) -> impl Iterator<Item = u64> {
    (start.max(2)..).filter(|&n| is_prime(n))
}

pub fn reduce_int(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

pub fn reduce(f: &IntPoly, p: u64) -> PolyP {
    trim(f.coeffs().iter().map(|c| reduce_int(c, p)).collect())
}

pub fn degree(f: &PolyP) -> usize {
    f.len().saturating_sub(1)
}

pub fn add(a: &PolyP, b: &PolyP, p: u64) -> PolyP {
    let n = a.len().max(b.len());
    trim((0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
        .collect())
}

pub fn sub(a: &PolyP, b: &PolyP, p: u64) -> PolyP {
    let n = a.len().max(b.len());
    trim((0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
        .collect())
}

pub fn mul(a: &PolyP, b: &PolyP, p: u64) -> PolyP {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            v[i + j] = (v[i + j] + x * y % p) % p;
        }
    }
    trim(v)
}

pub fn scale(a: &PolyP, k: u64, p: u64) -> PolyP {
    trim(a.iter().map(|&x| x * (k % p) % p).collect())
}

pub fn monic(a: &PolyP, p: u64) -> PolyP {
    match a.last() {
        None => Vec::new(),
        Some(&l) => scale(a, inv_mod(l, p), p),
    }
}

/// Quotient and remainder; `b` nonzero.
pub fn divrem(a: &PolyP, b: &PolyP, p: u64) -> (PolyP, PolyP) {
    assert!(!b.is_empty(), "division by zero polynomial mod p");
    if a.len() < b.len() {
        return (Vec::new(), a.clone());
    }
    let mut r = a.clone();
    let db = b.len() - 1;
    let inv = inv_mod(*b.last().unwrap(), p);
    let mut q = vec![0u64; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db] * inv % p;
        if c == 0 {
            continue;
        }
        q[k] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[k + j] = (r[k + j] + p - c * bj % p) % p;
        }
    }
    (trim(q), trim(r))
}

pub fn rem(a: &PolyP, b: &PolyP, p: u64) -> PolyP {
    divrem(a, b, p).1
}

/// Monic gcd.
pub fn gcd(a: &PolyP, b: &PolyP, p: u64) -> PolyP {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// Extended gcd: returns (g, s, t) with s*a + t*b = g monic.
pub fn ext_gcd(a: &PolyP, b: &PolyP, p: u64) -> (PolyP, PolyP, PolyP) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    let l = inv_mod(*r0.last().expect("gcd of zero polynomials"), p);
    (scale(&r0, l, p), scale(&s0, l, p), scale(&t0, l, p))
}

pub fn derivative(a: &PolyP, p: u64) -> PolyP {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| (i as u64 % p) * c % p).collect())
}

fn mulmod_poly(a: &PolyP, b: &PolyP, m: &PolyP, p: u64) -> PolyP {
    rem(&mul(a, b, p), m, p)
}

/// `base^e mod m`.
pub fn powmod(base: &PolyP, mut e: u64, m: &PolyP, p: u64) -> PolyP {
    let mut r = vec![1u64];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod_poly(&r, &b, m, p);
        }
        b = mulmod_poly(&b, &b, m, p);
        e >>= 1;
    }
    rem(&r, m, p)
}

/// True if `f mod p` exists with full degree and is squarefree.
pub fn is_good_prime(f: &IntPoly, p: u64) -> bool {
    let fp = reduce(f, p);
    if degree(&fp) != f.degree() {
        return false;
    }
    degree(&gcd(&fp, &derivative(&fp, p), p)) == 0
}

const CHECK_PRIMES_START: u64 = 2_147_483_000;

/// Proof shortcut: true if `a` and `b` (primitive) are coprime over Q, certified
/// by a prime not dividing either leading coefficient. False means "unknown".
pub fn coprime_modular(a: &IntPoly, b: &IntPoly) -> bool {
    for p in primes_from(CHECK_PRIMES_START).take(3) {
        let ap = reduce(a, p);
        let bp = reduce(b, p);
        if degree(&ap) != a.degree() || degree(&bp) != b.degree() {
            continue;
        }
        if degree(&gcd(&ap, &bp, p)) == 0 {
            return true;
        }
    }
    false
}

pub fn squarefree_mod_some_prime(f: &IntPoly) -> bool {
    primes_from(CHECK_PRIMES_START).take(3).any(|p| is_good_prime(f, p))
}

/// Distinct-degree factorization of a monic squarefree polynomial.
fn distinct_degree(f: &PolyP, p: u64) -> Vec<(PolyP, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let mut d = 0;
    while degree(&f) >= 2 * (d + 1) {
        d += 1;
        h = powmod(&h, p, &f, p);
        let g = gcd(&sub(&h, &x, p), &f, p);
        if degree(&g) > 0 {
            f = divrem(&f, &g, p).0;
            h = rem(&h, &f, p);
            out.push((g, d));
        }
    }
    if degree(&f) > 0 {
        let dg = degree(&f);
        out.push((f, dg));
    }
    out
}

/// Cantor–Zassenhaus equal-degree splitting (odd p).
fn equal_degree(f: &PolyP, d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<PolyP> {
    let n = degree(f);
    if n == d {
        return vec![f.clone()];
    }
    loop {
        let a: PolyP = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if degree(&a) == 0 {
            continue;
        }
        // b = a^((p^d - 1)/2) mod f, computed as a^((p-1)/2) * (a^(p+...))...
        // via the identity (p^d - 1)/2 = (p-1)/2 * (1 + p + ... + p^(d-1)).
        let mut t = a.clone();
        let mut acc = a.clone();
        for _ in 1..d {
            t = powmod(&t, p, f, p);
            acc = mulmod_poly(&acc, &t, f, p);
        }
        let b = powmod(&acc, (p - 1) / 2, f, p);
        let g = gcd(&sub(&b, &vec![1u64], p), f, p);
        let dg = degree(&g);
        if dg > 0 && dg < n {
            let q = divrem(f, &g, p).0;
            let mut out = equal_degree(&g, d, p, rng);
            out.extend(equal_degree(&monic(&q, p), d, p, rng));
            return out;
        }
    }
}

/// Monic irreducible factors of a squarefree polynomial mod an odd prime,
/// sorted by (degree, coefficients).
pub fn factor_squarefree(f: &PolyP, p: u64) -> Vec<PolyP> {
    assert!(p > 2, "factorization mod p needs an odd prime");
    let f = monic(f, p);
    let mut rng = ChaCha8Rng::seed_from_u64(p ^ (degree(&f) as u64).rotate_left(32));
    let mut out = Vec::new();
    for (g, d) in distinct_degree(&f, p) {
        out.extend(equal_degree(&g, d, p, &mut rng));
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

pub fn lift_to_int(a: &PolyP) -> IntPoly {
    IntPoly::new(a.iter().map(|&c| BigInt::from(c)).collect())
}

pub fn is_zero(a: &PolyP) -> bool {
    a.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(2_147_483_649));
        assert_eq!(primes_from(10).take(3).collect::<Vec<_>>(), vec![11, 13, 17]);
    }

    #[test]
    fn factor_mod_p_products() {
        let p = 13;
        // (x+1)(x+2)(x^2+2) mod 13 ; x^2+2 irreducible mod 13 since -2 is a non-residue
        let f = mul(&mul(&vec![1, 1], &vec![2, 1], p), &vec![2, 0, 1], p);
        let fs = factor_squarefree(&f, p);
        assert_eq!(fs, vec![vec![1, 1], vec![2, 1], vec![2, 0, 1]]);
    }

    #[test]
    fn ext_gcd_bezout() {
        let p = 101;
        let a = vec![3, 0, 1];
        let b = vec![1, 5];
        let (g, s, t) = ext_gcd(&a, &b, p);
        assert_eq!(g, vec![1]);
        assert_eq!(add(&mul(&s, &a, p), &mul(&t, &b, p), p), vec![1]);
    }

    #[test]
    fn squarefree_check() {
        let f = IntPoly::from_i64s(&[-2, 0, 1]);
        assert!(squarefree_mod_some_prime(&f));
        let g = IntPoly::from_i64s(&[1, 2, 1]);
        assert!(!squarefree_mod_some_prime(&g));
    }
}
