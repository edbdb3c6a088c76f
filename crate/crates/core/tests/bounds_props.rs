use lehmer_core::bounds::{amdel, amdel2, amza2, vout2, voutier, voutier_at};
use lehmer_core::dyadic::Dyadic;
use lehmer_core::Result;
use num_bigint::BigInt;
use num_rational::BigRational;

fn nonincreasing(from: u64, to: u64, f: impl Fn(u64) -> Result<Dyadic>) -> Option<u64> {
    let mut prev = f(from).unwrap();
    for d in from + 1..=to {
        let v = f(d).unwrap();
        if v > prev {
            return Some(d);
        }
        prev = v;
    }
    None
}

#[test]
fn monotone_in_the_degree() {
    let one = BigRational::from_integer(BigInt::from(1));
    assert_eq!(nonincreasing(6, 10_000, voutier), None);
    assert_eq!(nonincreasing(3, 10_000, vout2), None);
    assert_eq!(nonincreasing(1, 10_000, amdel), None);
    assert_eq!(nonincreasing(2, 10_000, amdel2), None);
    assert_eq!(nonincreasing(2, 10_000, |d| amza2(d, Some(&one))), None);
}

#[test]
fn voutier_rises_before_six() {
    let v: Vec<f64> = (3..=7).map(|d| voutier(d).unwrap().to_f64()).collect();
    assert!(v[0] < v[1] && v[1] < v[2] && v[2] < v[3] && v[4] < v[3]);
}

#[test]
fn rounding_is_outward() {
    for d in [3u64, 10, 100, 9999] {
        let want = (d as f64).ln().ln().powi(3) / (d as f64).ln().powi(3) / (4.0 * d as f64);
        let lo = voutier_at(d, 40).unwrap().to_f64();
        assert!(lo <= want * (1.0 + 1e-15) && lo >= want * (1.0 - 1e-9));
    }
}
