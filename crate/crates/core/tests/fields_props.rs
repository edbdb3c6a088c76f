mod common;

use common::*;
use lehmer_core::corpus::{random_divisible_member, random_non_member};
use lehmer_core::fields::{
    capelli_irreducible, conjugates_over_k, in_k_div, least_power_in_field, v_lower, v_upper_norm_trick,
    w_height, FieldElement, NumberField,
};
use lehmer_core::heights::{weil_height, HeightInterval};
use lehmer_core::literal::parse_field;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rationals() -> NumberField {
    NumberField::rationals()
}

/// `max_c h(c / alpha)` with each ratio formed by exact division.
fn w_by_division(a: &lehmer_core::AlgebraicNumber) -> HeightInterval {
    let mut best = HeightInterval::zero();
    for c in &a.conjugates()[1..] {
        let r = c.div(a, MB).unwrap();
        best = best.max(&weil_height(&r, &tol(), MB).unwrap());
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn sandwich_over_q(seed in any::<u64>()) {
        let a = number(seed, 2, 5, 20);
        let (q, t) = (rationals(), tol());
        let lo = v_lower(&a, &q, &t, MB).unwrap();
        let up = v_upper_norm_trick(&a, &q, &t, MB).unwrap();
        let w = w_height(&a, &q, &t, MB).unwrap();
        prop_assert!(lo.lo() <= up.hi());
        prop_assert!(*up.hi() <= w.hi() + &t.shl(1));
    }

    #[test]
    fn w_matches_exact_division(seed in any::<u64>()) {
        let a = number(seed, 2, 4, 10);
        let w = w_height(&a, &rationals(), &tol(), MB).unwrap();
        let oracle = w_by_division(&a);
        prop_assert!((w.mid_f64() - oracle.mid_f64()).abs() < 1e-10);
    }

    #[test]
    fn ratio_degree_at_most_d_times_d_minus_one(seed in any::<u64>()) {
        let a = number(seed, 2, 4, 10);
        let d = a.degree();
        for c in &a.conjugates()[1..] {
            prop_assert!(c.div(&a, MB).unwrap().degree() <= d * (d - 1));
        }
    }

    #[test]
    fn conjugates_over_q_are_the_conjugates(seed in any::<u64>()) {
        let a = number(seed, 1, 6, 20);
        let c = conjugates_over_k(&a, &rationals(), MB).unwrap();
        let want = a.conjugates();
        prop_assert_eq!(c.len(), want.len());
        for (x, y) in c.iter().zip(&want) {
            prop_assert!(x.equals(y, MB).unwrap());
        }
    }

    #[test]
    fn divisibility_both_directions(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (q, t) = (rationals(), tol());
        let (m, _) = random_divisible_member(&mut rng, 9, MB).unwrap();
        prop_assert!(in_k_div(&m, &q, MB).unwrap());
        prop_assert!(w_height(&m, &q, &t, MB).unwrap().is_exact_zero());
        prop_assert!(v_upper_norm_trick(&m, &q, &t, MB).unwrap().is_exact_zero());
        let n = random_non_member(&mut rng, 5, 9, MB).unwrap();
        prop_assert!(!in_k_div(&n, &q, MB).unwrap());
        prop_assert!(w_height(&n, &q, &t, MB).unwrap().lo().is_positive());
    }

    #[test]
    fn least_power_is_least(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, bound) = random_divisible_member(&mut rng, 9, MB).unwrap();
        let m = least_power_in_field(&a, &rationals(), 24, MB).unwrap().expect("a power is rational");
        prop_assert_eq!(bound % m, 0);
        prop_assert!(a.pow_int(m as i64, MB).unwrap().is_rational());
        for j in 1..m {
            prop_assert!(!a.pow_int(j as i64, MB).unwrap().is_rational());
        }
    }

    #[test]
    fn capelli_matches_degree(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, m) = random_divisible_member(&mut rng, 9, MB).unwrap();
        let beta = a.pow_int(m as i64, MB).unwrap().as_rational().unwrap();
        let e = FieldElement::from_rational(&rationals(), beta);
        prop_assert_eq!(capelli_irreducible(&e, m).unwrap(), a.degree() as u64 == m);
    }
}

fn sqrt2_field() -> NumberField {
    parse_field("field:poly:[-2,0,1];box:1.4,1.5,0,0", MB).unwrap()
}

#[test]
fn sandwich_over_a_quadratic_field() {
    let k = sqrt2_field();
    let t = tol();
    for (c, b) in [
        (&[-2i64, 0, 0, 0, 1][..], "1.1,1.2,0,0"),
        (&[-1, -1, 0, 1][..], "1.3,1.4,0,0"),
        (&[-3, 0, 1][..], "1.7,1.8,0,0"),
        (&[-1, -1, 0, 0, 1][..], "1.2,1.3,0,0"),
    ] {
        let a = root(c, b);
        let lo = v_lower(&a, &k, &t, MB).unwrap();
        let up = v_upper_norm_trick(&a, &k, &t, MB).unwrap();
        let w = w_height(&a, &k, &t, MB).unwrap();
        assert!(lo.lo() <= up.hi(), "{c:?}");
        assert!(*up.hi() <= w.hi() + &t.shl(1), "{c:?}");
    }
}

#[test]
fn relative_conjugates_and_divisibility() {
    let k = sqrt2_field();
    let a = root(&[-2, 0, 0, 0, 1], "1.1,1.2,0,0");
    assert_eq!(conjugates_over_k(&a, &k, MB).unwrap().len(), 2);
    assert!(in_k_div(&a, &k, MB).unwrap());
    assert_eq!(least_power_in_field(&a, &k, 10, MB).unwrap(), Some(2));
    let s = root(&[-2, 0, 1], "1.4,1.5,0,0");
    assert_eq!(conjugates_over_k(&s, &k, MB).unwrap().len(), 1);
    let u = root(&[-1, -2, 1], "2,3,0,0");
    assert!(in_k_div(&u, &k, MB).unwrap());
    assert!(!in_k_div(&u, &rationals(), MB).unwrap());
}

#[test]
fn unit_example_values() {
    let a = root(&[-1, -2, 1], "2,3,0,0");
    let (q, t) = (rationals(), tol());
    let w = w_height(&a, &q, &t, MB).unwrap().mid_f64();
    let want = 0.5 * (3.0 + 2.0 * 2f64.sqrt()).ln();
    assert!((w - want).abs() < 1e-10);
    assert!((v_lower(&a, &q, &t, MB).unwrap().mid_f64() - want / 2.0).abs() < 1e-10);
    assert_eq!(least_power_in_field(&a, &q, 6, MB).unwrap(), None);
    assert_eq!(least_power_in_field(&root(&[-2, 0, 0, 1], "1.2,1.3,0,0"), &q, 10, MB).unwrap(), Some(3));
    assert_eq!(least_power_in_field(&int(-1), &q, 10, MB).unwrap(), Some(1));
}
