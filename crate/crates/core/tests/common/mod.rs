#![allow(dead_code)]

use lehmer_core::algnum::{AlgebraicNumber, DEFAULT_MAX_BITS};
use lehmer_core::corpus::random_number;
use lehmer_core::dyadic::Dyadic;
use lehmer_core::heights::default_tol;
use lehmer_core::interval::ComplexBox;
use lehmer_core::poly::IntPoly;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const MB: u64 = DEFAULT_MAX_BITS;

pub fn tol() -> Dyadic {
    default_tol()
}

/// A pseudo-random number of degree in `lo..=hi` determined by `seed`.
pub fn number(seed: u64, lo: usize, hi: usize, b: i64) -> AlgebraicNumber {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let d = rng.gen_range(lo..=hi);
        if let Some(a) = random_number(&mut rng, d, b, MB).unwrap() {
            return a;
        }
    }
}

pub fn int(n: i64) -> AlgebraicNumber {
    AlgebraicNumber::from_i64(n, 1).unwrap()
}

pub fn root(c: &[i64], b: &str) -> AlgebraicNumber {
    AlgebraicNumber::from_poly_root(&IntPoly::from_i64s(c), &ComplexBox::parse(b).unwrap(), MB).unwrap()
}

/// `(1/d) (log |lc| + sum log max(1, |z|))` from f64 Durand-Kerner roots,
/// independent of the certified root isolation.
pub fn float_height(c: &[i64]) -> f64 {
    let d = c.len() - 1;
    let lc = c[d] as f64;
    let mut z: Vec<(f64, f64)> = (0..d)
        .map(|k| {
            let t = 0.4 + 2.0 * std::f64::consts::PI * k as f64 / d as f64;
            (1.3 * t.cos(), 1.3 * t.sin())
        })
        .collect();
    let mul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let div = |a: (f64, f64), b: (f64, f64)| {
        let n = b.0 * b.0 + b.1 * b.1;
        ((a.0 * b.0 + a.1 * b.1) / n, (a.1 * b.0 - a.0 * b.1) / n)
    };
    for _ in 0..500 {
        for i in 0..d {
            let mut p = (0.0, 0.0);
            for &ck in c.iter().rev() {
                p = mul(p, z[i]);
                p.0 += ck as f64 / lc;
            }
            let mut q = (1.0, 0.0);
            for j in 0..d {
                if j != i {
                    q = mul(q, (z[i].0 - z[j].0, z[i].1 - z[j].1));
                }
            }
            let step = div(p, q);
            z[i] = (z[i].0 - step.0, z[i].1 - step.1);
        }
    }
    let s: f64 = z.iter().map(|w| (w.0 * w.0 + w.1 * w.1).sqrt().max(1.0).ln()).sum();
    (lc.abs().ln() + s) / d as f64
}
