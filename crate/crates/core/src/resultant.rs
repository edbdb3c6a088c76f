//! Resultants over `Z` and `Z[x]`.
//!
//! Bivariate resultants are computed by evaluating at integer nodes, taking
//! exact Sylvester determinants by fraction-free elimination, and
//! interpolating in Newton form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::poly::IntPoly;

/// Determinant by Bareiss fraction-free elimination.
pub fn det_bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = !sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v.div_floor(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Sylvester matrix of coefficient vectors taken at their formal length, so a
/// vanishing leading entry is kept in place.
pub fn sylvester(f: &[BigInt], g: &[BigInt]) -> Vec<Vec<BigInt>> {
    let m = f.len().saturating_sub(1);
    let n = g.len().saturating_sub(1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in f.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in g.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

pub fn resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    if f.is_zero() || g.is_zero() {
        return BigInt::zero();
    }
    det_bareiss(sylvester(f.coeffs(), g.coeffs()))
}

/// A polynomial in `y` whose coefficients are polynomials in `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly {
    /// `coeffs[i]` is the coefficient of `y^i`.
    pub coeffs: Vec<IntPoly>,
}

impl BiPoly {
    pub fn new(mut coeffs: Vec<IntPoly>) -> BiPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        BiPoly { coeffs }
    }

    pub fn degree_y(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn degree_x(&self) -> usize {
        self.coeffs.iter().map(IntPoly::degree).max().unwrap_or(0)
    }

    /// Coefficients in `y` after substituting `x = x0`, at formal length.
    pub fn eval_x(&self, x0: &BigInt) -> Vec<BigInt> {
        self.coeffs.iter().map(|c| c.eval(x0)).collect()
    }

    /// `y^n g(x/y)` with `n = deg g`: roots in `x` are `y` times roots of `g`.
    pub fn homogenized_scaling(g: &IntPoly) -> BiPoly {
        let n = g.degree();
        let coeffs = (0..=n)
            .map(|j| IntPoly::monomial(g.coeff(n - j), n - j))
            .collect();
        BiPoly::new(coeffs)
    }

    /// `g(x y)`: roots in `x` are roots of `g` divided by `y`.
    pub fn product_substitution(g: &IntPoly) -> BiPoly {
        let coeffs = (0..=g.degree())
            .map(|i| IntPoly::monomial(g.coeff(i), i))
            .collect();
        BiPoly::new(coeffs)
    }

    /// `x - y^e`.
    pub fn power_relation(e: usize) -> BiPoly {
        let mut coeffs = vec![IntPoly::zero(); e + 1];
        coeffs[0] = IntPoly::linear(BigInt::one(), BigInt::zero());
        coeffs[e] = IntPoly::constant(-BigInt::one());
        BiPoly::new(coeffs)
    }

    /// `g(x - s y)`: roots in `x` are roots of `g` shifted by `s y`.
    pub fn shifted(g: &IntPoly, s: &BigInt) -> BiPoly {
        // (x - s y)^k = sum_j binom(k, j) x^(k-j) (-s y)^j
        let n = g.degree();
        let mut coeffs = vec![vec![BigInt::zero(); n + 1]; n + 1];
        let ms = -s;
        for k in 0..=n {
            let gk = g.coeff(k);
            if gk.is_zero() {
                continue;
            }
            let mut binom = BigInt::one();
            let mut spow = BigInt::one();
            for j in 0..=k {
                coeffs[j][k - j] += &gk * &binom * &spow;
                binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
                spow *= &ms;
            }
        }
        BiPoly::new(coeffs.into_iter().map(IntPoly::new).collect())
    }
}

/// `Res_y(f(y), g(x, y))` as a polynomial in `x`.
pub fn resultant_y(f: &IntPoly, g: &BiPoly) -> IntPoly {
    let bound = f.degree() * g.degree_x();
    let nodes: Vec<BigInt> = (0..=bound as i64)
        .map(|i| {
            // 0, 1, -1, 2, -2, ... keeps node magnitudes small.
            let k = (i + 1) / 2;
            BigInt::from(if i % 2 == 1 { k } else { -k })
        })
        .collect();
    let values: Vec<BigInt> = nodes
        .iter()
        .map(|x0| det_bareiss(sylvester(f.coeffs(), &g.eval_x(x0))))
        .collect();
    interpolate(&nodes, values)
}

/// Newton interpolation through integer nodes; exact when the interpolant has
/// integer coefficients.
pub fn interpolate(nodes: &[BigInt], mut dd: Vec<BigInt>) -> IntPoly {
    let n = nodes.len();
    for k in 1..n {
        for i in (k..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &nodes[i] - &nodes[i - k];
            debug_assert!((&num % &den).is_zero(), "non-integral divided difference");
            dd[i] = num / den;
        }
    }
    let mut p = IntPoly::zero();
    for k in (0..n).rev() {
        p = p
            .mul(&IntPoly::linear(BigInt::one(), -&nodes[k]))
            .add(&IntPoly::constant(dd[k].clone()));
    }
    p
}

/// Polynomial whose roots are all products `a_i b_j`.
pub fn product_poly(f: &IntPoly, g: &IntPoly) -> IntPoly {
    resultant_y(f, &BiPoly::homogenized_scaling(g))
}

/// Polynomial whose roots are all quotients `a_i / b_j` (`b_j != 0`).
pub fn quotient_poly(f: &IntPoly, g: &IntPoly) -> IntPoly {
    resultant_y(g, &BiPoly::product_substitution(f))
}

/// Polynomial whose roots are all `a_i^e`, `e >= 1`.
pub fn power_poly(f: &IntPoly, e: usize) -> IntPoly {
    resultant_y(f, &BiPoly::power_relation(e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn determinant_small() {
        let m = vec![vec![b(2), b(0), b(1)], vec![b(1), b(3), b(2)], vec![b(1), b(1), b(2)]];
        assert_eq!(det_bareiss(m), b(6));
        let m = vec![vec![b(0), b(1)], vec![b(1), b(0)]];
        assert_eq!(det_bareiss(m), b(-1));
    }

    #[test]
    fn resultant_matches_root_product() {
        // lc(f)^1 * g(sqrt2) * g(-sqrt2) = (sqrt2 - 3)(-sqrt2 - 3) = 7
        assert_eq!(resultant(&p(&[-2, 0, 1]), &p(&[-3, 1])), b(7));
        // common root gives zero
        assert_eq!(resultant(&p(&[-1, 0, 1]), &p(&[-1, 1])), b(0));
    }

    #[test]
    fn product_of_square_roots() {
        // sqrt2 * sqrt3 has conjugates +-sqrt6: (x^2-6)^2
        let r = product_poly(&p(&[-2, 0, 1]), &p(&[-3, 0, 1]));
        assert_eq!(r.primitive(), p(&[-6, 0, 1]).pow(2));
    }

    #[test]
    fn quotient_and_power() {
        let r = quotient_poly(&p(&[-2, 0, 1]), &p(&[-3, 1]));
        // roots +-sqrt2/3: 9x^2 - 2
        assert_eq!(r.primitive(), p(&[-2, 0, 9]));
        let r = power_poly(&p(&[-2, 0, 1]), 3);
        // (sqrt2)^3 = +-2 sqrt2: x^2 - 8
        assert_eq!(r.primitive(), p(&[-8, 0, 1]));
    }

    #[test]
    fn shifted_sum() {
        // roots a + s*t for a root of x^2-2 and t root of x^2-3, s=1: minpoly of sqrt2+sqrt3
        let r = resultant_y(&p(&[-3, 0, 1]), &BiPoly::shifted(&p(&[-2, 0, 1]), &b(1)));
        assert_eq!(r.primitive(), p(&[1, 0, -10, 0, 1]));
    }
}
