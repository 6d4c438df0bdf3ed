use proptest::prelude::*;
use terracini::fields::{is_prime, rat_normalize, Field, PrimeField, Rational, RationalField};

fn rational() -> impl Strategy<Value = Rational> {
    (-1000i64..=1000, 1i64..=1000).prop_map(|(n, d)| rat_normalize(n, d).unwrap())
}

fn axioms<F: Field>(f: &F, a: &F::Elem, b: &F::Elem, c: &F::Elem) {
    assert_eq!(f.add(a, b), f.add(b, a));
    assert_eq!(f.mul(a, b), f.mul(b, a));
    assert_eq!(f.add(&f.add(a, b), c), f.add(a, &f.add(b, c)));
    assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
    assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
    assert_eq!(f.sub(&f.add(a, b), b), *a);
    if !f.is_zero(b) {
        assert_eq!(f.mul(&f.div(a, b).unwrap(), b), *a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        axioms(&RationalField, &a, &b, &c);
    }

    #[test]
    fn prime_field_axioms(a in 0u64..32003, b in 0u64..32003, c in 0u64..32003) {
        let f = PrimeField::new(32003).unwrap();
        axioms(&f, &f.from_i64(a as i64), &f.from_i64(b as i64), &f.from_i64(c as i64));
    }

    #[test]
    fn normalization_cancels_common_factors(n in -10_000i64..=10_000, d in 1i64..=10_000, k in prop::sample::select(vec![-7i64, -1, 2, 3, 1000])) {
        prop_assert_eq!(rat_normalize(n * k, d * k).unwrap(), rat_normalize(n, d).unwrap());
    }
}

#[test]
fn inverse_is_an_involution_for_small_primes() {
    for p in (2..=101u64).filter(|&p| is_prime(p)) {
        let f = PrimeField::new(p).unwrap();
        for v in 1..p {
            let a = f.from_i64(v as i64);
            assert_eq!(f.inv(&f.inv(&a).unwrap()).unwrap(), a, "p = {p}, a = {v}");
            assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
        }
    }
}

#[test]
fn small_examples() {
    let half = rat_normalize(2, 4).unwrap();
    assert_eq!(half.to_string(), "1/2");
    assert_eq!(rat_normalize(-3, -6).unwrap(), half);
    assert!(rat_normalize(1, 0).is_err());
    let f = PrimeField::new(7).unwrap();
    assert_eq!(f.sub(&f.from_i64(3 as i64), &f.from_i64(5 as i64)), f.from_i64(5 as i64));
    assert!(PrimeField::new(8).is_err());
}
