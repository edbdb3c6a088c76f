//! Cyclotomic polynomials and the inverse of Euler's totient.

use num_bigint::BigInt;
use num_traits::One;

use crate::poly::IntPoly;

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn mobius(mut n: u64) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// All `N` with `phi(N) = d`, ascending. Uses `phi(N) >= sqrt(N/2)`.
pub fn inverse_phi(d: u64) -> Vec<u64> {
    if d == 1 {
        return vec![1, 2];
    }
    if d % 2 == 1 {
        return Vec::new();
    }
    (1..=2 * d * d).filter(|&n| euler_phi(n) == d).collect()
}

/// The `n`-th cyclotomic polynomial, from `prod_{e | n} (x^e - 1)^{mu(n/e)}`.
pub fn cyclotomic(n: u64) -> IntPoly {
    assert!(n >= 1);
    let mut num = IntPoly::one();
    let mut den = IntPoly::one();
    for e in 1..=n {
        if n % e != 0 {
            continue;
        }
        let f = IntPoly::monomial(BigInt::one(), e as usize).sub(&IntPoly::one());
        match mobius(n / e) {
            1 => num = num.mul(&f),
            -1 => den = den.mul(&f),
            _ => {}
        }
    }
    num.div_exact(&den).expect("cyclotomic quotient is exact")
}

/// If `f` (primitive, irreducible) is a cyclotomic polynomial, its index.
pub fn cyclotomic_index(f: &IntPoly) -> Option<u64> {
    let d = f.degree() as u64;
    if d == 0 {
        return None;
    }
    let f = f.primitive();
    if !f.lead().is_one() || f.coeff(0).magnitude() != &num_bigint::BigUint::one() {
        return None;
    }
    if d == 1 {
        return Some(if f.coeff(0).is_one() { 2 } else { 1 });
    }
    // Cyclotomic polynomials of degree > 1 are palindromic.
    let c = f.coeffs();
    if (0..c.len()).any(|i| c[i] != c[c.len() - 1 - i]) {
        return None;
    }
    inverse_phi(d).into_iter().find(|&n| cyclotomic(n) == f)
}
