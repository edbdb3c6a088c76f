//! Explicit lower bounds for heights, evaluated with outward rounding.
//!
//! Every evaluator returns the lower endpoint of a certified enclosure, so a
//! comparison `height.lo >= bound` is conservative.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::interval::Interval;

/// Working precision of the public evaluators.
pub const BOUND_PREC: u64 = 128;

/// Degrees and constants a bound may depend on.
#[derive(Clone, Debug, Default)]
pub struct BoundParams {
    /// `[Q(alpha):Q]`.
    pub d: u64,
    /// Degree over the maximal abelian extension of `Q`, supplied by the caller.
    pub d0: Option<u64>,
    /// Degree over the maximal abelian extension of `k`, supplied by the caller.
    pub big_d: Option<u64>,
    /// The field constant `c(k)`, supplied by the caller.
    pub c_k: Option<BigRational>,
    /// The conjectural degree-one constant, supplied by the caller.
    pub c0_gamma: Option<BigRational>,
}

fn int(n: u64) -> Interval {
    Interval::from_i64(n as i64)
}

/// `log log x / log x` for `x >= 3`.
fn loglog_ratio(x: &Interval, prec: u64) -> Interval {
    let l = x.ln(prec);
    l.ln(prec).div(&l, prec)
}

pub fn voutier_at(d: u64, prec: u64) -> Result<Dyadic> {
    if d <= 2 {
        return Err(Error::OutOfRange(format!("voutier needs d > 2, got {d}")));
    }
    let r = loglog_ratio(&int(d), prec).pow_u(3, prec);
    Ok(r.div(&int(4 * d), prec).lo)
}

/// `(1/4d) (log log d / log d)^3`.
pub fn voutier(d: u64) -> Result<Dyadic> {
    voutier_at(d, BOUND_PREC)
}

pub fn vout2_at(d: u64, prec: u64) -> Result<Dyadic> {
    if d <= 2 {
        return Err(Error::OutOfRange(format!("vout2 needs d > 2, got {d}")));
    }
    let dd = d * (d - 1);
    let r = loglog_ratio(&int(dd), prec).pow_u(3, prec);
    Ok(r.div(&int(8 * dd), prec).lo)
}

/// `(1 / 8d(d-1)) (log log d(d-1) / log d(d-1))^3`.
pub fn vout2(d: u64) -> Result<Dyadic> {
    vout2_at(d, BOUND_PREC)
}

/// `(1/x) (log log 5x)^3 / (log 2x)^4`.
fn amdel_core(x: u64, prec: u64) -> Interval {
    let ll = int(5 * x).ln(prec).ln(prec).pow_u(3, prec);
    let l = int(2 * x).ln(prec).pow_u(4, prec);
    ll.div(&l, prec).div(&int(x), prec)
}

pub fn amdel_at(d0: u64, prec: u64) -> Result<Dyadic> {
    if d0 == 0 {
        return Err(Error::OutOfRange("amdel needs D0 >= 1".into()));
    }
    Ok(amdel_core(d0, prec).lo)
}

/// `(1/D0) (log log 5D0)^3 / (log 2D0)^4`.
pub fn amdel(d0: u64) -> Result<Dyadic> {
    amdel_at(d0, BOUND_PREC)
}

pub fn amdel2_at(d0: u64, prec: u64) -> Result<Dyadic> {
    if d0 <= 1 {
        return Err(Error::OutOfRange(format!("amdel2 needs D0 > 1, got {d0}")));
    }
    Ok(amdel_core(d0 * (d0 - 1), prec).shl(-1).lo)
}

/// `(1 / 2D0(D0-1)) (log log 5D0(D0-1))^3 / (log 2D0(D0-1))^4`.
pub fn amdel2(d0: u64) -> Result<Dyadic> {
    amdel2_at(d0, BOUND_PREC)
}

fn positive(c: Option<&BigRational>, name: &str) -> Result<BigRational> {
    match c {
        None => Err(Error::MissingConstant(name.into())),
        Some(c) if !c.is_positive() => Err(Error::OutOfRange(format!("{name} must be positive"))),
        Some(c) => Ok(c.clone()),
    }
}

pub fn amza2_at(big_d: u64, c_k: Option<&BigRational>, prec: u64) -> Result<Dyadic> {
    if big_d <= 1 {
        return Err(Error::OutOfRange(format!("amza2 needs D > 1, got {big_d}")));
    }
    let c = positive(c_k, "c(k)")?;
    let x = big_d * (big_d - 1);
    let num = int(5 * x).ln(prec).ln(prec);
    let den = int(2 * x).ln(prec);
    let r = num.div(&den, prec).pow_u(13, prec);
    Ok(r.mul(&Interval::from_ratio(&c, prec), prec).div(&int(x), prec).lo)
}

/// `c(k) / D(D-1) (log log 5D(D-1) / log 2D(D-1))^13` with a caller-supplied
/// constant `c(k)`.
pub fn amza2(big_d: u64, c_k: Option<&BigRational>) -> Result<Dyadic> {
    amza2_at(big_d, c_k, BOUND_PREC)
}

/// `C0 / m` for the conjectural constant `C0` and the relative degree `m`.
pub fn strong_form_bound(c0_gamma: Option<&BigRational>, m: u64) -> Result<Dyadic> {
    let c = positive(c0_gamma, "C0_Gamma")?;
    if m == 0 {
        return Err(Error::OutOfRange("degree must be at least 1".into()));
    }
    let q = c / BigRational::from_integer(BigInt::from(m));
    Ok(Interval::from_ratio(&q, BOUND_PREC).lo)
}

/// One evaluated row of the bounds table.
#[derive(Clone, Debug, Serialize)]
pub struct BoundRow {
    pub name: &'static str,
    pub tag: &'static str,
    pub argument: u64,
    pub value: Option<String>,
    pub error: Option<String>,
    pub note: Option<&'static str>,
}

/// Evaluate every bound applicable to `p`.
pub fn table(p: &BoundParams) -> Vec<BoundRow> {
    let row = |name, tag, argument, r: Result<Dyadic>, note| BoundRow {
        name,
        tag,
        argument,
        value: r.as_ref().ok().map(|v| format!("{:.6e}", v.to_f64())),
        error: r.err().map(|e| e.to_string()),
        note,
    };
    let mut out = vec![
        row("voutier", "vout", p.d, voutier(p.d), None),
        row("vout2", "vout2", p.d, vout2(p.d), None),
    ];
    if let Some(d0) = p.d0 {
        out.push(row("amdel", "amdel", d0, amdel(d0), None));
        out.push(row("amdel2", "amdel2", d0, amdel2(d0), None));
    }
    if let Some(big_d) = p.big_d {
        out.push(row("amza2", "amza2", big_d, amza2(big_d, p.c_k.as_ref()), Some("c(k) is user-supplied")));
    }
    if p.c0_gamma.is_some() {
        out.push(row(
            "strong_form",
            "sf",
            p.d,
            strong_form_bound(p.c0_gamma.as_ref(), p.d),
            Some("C0_Gamma is user-supplied"),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(x: Dyadic, want: f64, rel: f64) -> bool {
        (x.to_f64() - want).abs() <= rel * want.abs()
    }

    fn f64_voutier(d: f64) -> f64 {
        (d.ln().ln() / d.ln()).powi(3) / (4.0 * d)
    }

    #[test]
    fn voutier_values() {
        assert!(close(voutier(4).unwrap(), 8.17e-4, 1e-3));
        assert!(close(voutier(3).unwrap(), f64_voutier(3.0), 1e-12));
        assert!(close(voutier(3).unwrap(), 5.2275e-5, 1e-3));
        assert!(matches!(voutier(2), Err(Error::OutOfRange(_))));
        assert!(close(vout2(3).unwrap(), f64_voutier(6.0) / 2.0, 1e-12));
        assert!(close(vout2(4).unwrap(), f64_voutier(12.0) / 2.0, 1e-12));
    }

    #[test]
    fn amdel_values() {
        let want = 5f64.ln().ln().powi(3) / 2f64.ln().powi(4);
        assert!(close(amdel(1).unwrap(), want, 1e-12));
        assert!(close(amdel(1).unwrap(), 0.4669, 1e-3));
        let want2 = 10f64.ln().ln().powi(3) / 4f64.ln().powi(4) / 4.0;
        assert!(close(amdel2(2).unwrap(), want2, 1e-12));
        assert!(matches!(amdel2(1), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn amza2_and_strong_form() {
        let one = BigRational::from_integer(BigInt::from(1));
        let want = (10f64.ln().ln() / 4f64.ln()).powi(13) / 2.0;
        assert!(close(amza2(2, Some(&one)).unwrap(), want, 1e-12));
        assert!(matches!(amza2(2, None), Err(Error::MissingConstant(_))));
        assert!(matches!(amza2(1, Some(&one)), Err(Error::OutOfRange(_))));
        let tenth = BigRational::new(BigInt::from(1), BigInt::from(10));
        assert!(close(strong_form_bound(Some(&tenth), 3).unwrap(), 1.0 / 30.0, 1e-15));
        assert!(close(strong_form_bound(Some(&tenth), 1).unwrap(), 0.1, 1e-15));
        assert!(matches!(strong_form_bound(None, 3), Err(Error::MissingConstant(_))));
    }

    #[test]
    fn lower_precision_never_raises() {
        for d in [3u64, 7, 50, 1000] {
            assert!(voutier_at(d, 24).unwrap() <= voutier(d).unwrap());
            assert!(vout2_at(d, 24).unwrap() <= vout2(d).unwrap());
            assert!(amdel_at(d, 24).unwrap() <= amdel(d).unwrap());
            assert!(amdel2_at(d, 24).unwrap() <= amdel2(d).unwrap());
        }
    }

    #[test]
    fn table_rows() {
        let p = BoundParams { d: 3, d0: Some(2), big_d: Some(2), c_k: None, c0_gamma: None };
        let t = table(&p);
        assert_eq!(t.len(), 5);
        assert!(t[4].error.is_some());
    }
}
