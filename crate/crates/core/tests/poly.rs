use std::cmp::Ordering;
use std::sync::Arc;

use proptest::prelude::*;
use terracini::fields::{Field, PrimeField};
use terracini::poly::{Monomial, MonomialOrder, PolyRing, Polynomial, VariableLayout};

const NVARS: usize = 5;

fn field() -> PrimeField {
    PrimeField::new(32003).unwrap()
}

fn ring() -> Arc<PolyRing<PrimeField>> {
    PolyRing::new(field(), VariableLayout::source(&[1, 2]), MonomialOrder::DegRevLex)
}

fn exponents() -> impl Strategy<Value = Vec<u16>> {
    prop::collection::vec(0u16..4, NVARS)
}

fn poly() -> impl Strategy<Value = Vec<(Vec<u16>, u64)>> {
    prop::collection::vec((exponents(), 1u64..32003), 0..6)
}

fn build(r: &Arc<PolyRing<PrimeField>>, terms: &[(Vec<u16>, u64)]) -> Polynomial<PrimeField> {
    let f = r.field();
    r.from_terms(terms.iter().map(|(e, c)| (Monomial::new(e), f.from_i64(*c as i64))))
}

fn orders() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![
        Just(MonomialOrder::DegRevLex),
        (1usize..NVARS).prop_map(|main| MonomialOrder::Elimination { main }),
        (1u32..4).prop_map(|weight| MonomialOrder::WeightedLast { weight }),
    ]
}

proptest! {
    #[test]
    fn evaluation_is_multiplicative(f in poly(), g in poly(), point in prop::collection::vec(0u64..32003, NVARS)) {
        let r = ring();
        let fd = r.field().clone();
        let (f, g) = (build(&r, &f), build(&r, &g));
        let p: Vec<u64> = point.iter().map(|&v| fd.from_i64(v as i64)).collect();
        let lhs = f.checked_mul(&g).unwrap().evaluate(&p).unwrap();
        prop_assert_eq!(lhs, fd.mul(&f.evaluate(&p).unwrap(), &g.evaluate(&p).unwrap()));
    }

    #[test]
    fn orders_are_total_and_multiplicative(order in orders(), a in exponents(), b in exponents(), c in exponents()) {
        let (a, b, c) = (Monomial::new(&a), Monomial::new(&b), Monomial::new(&c));
        let ab = order.compare(&a, &b);
        prop_assert_eq!(ab, order.compare(&b, &a).reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        if ab == Ordering::Less && order.compare(&b, &c) == Ordering::Less {
            prop_assert_eq!(order.compare(&a, &c), Ordering::Less);
        }
        prop_assert_eq!(order.compare(&a.checked_mul(&c).unwrap(), &b.checked_mul(&c).unwrap()), ab);
        prop_assert_eq!(order.compare(&Monomial::one(NVARS), &a) != Ordering::Greater, true);
    }

    #[test]
    fn block_substitution_preserves_degree_and_coefficients(f in poly(), point in 0usize..3) {
        let r = ring();
        let f = build(&r, &f);
        let target = PolyRing::new(field(), VariableLayout::configuration(3, &[1, 2]), MonomialOrder::DegRevLex);
        let g = f.substitute_block(&target, point).unwrap();
        prop_assert_eq!(g.total_degree(), f.total_degree());
        let mut a: Vec<u64> = f.terms().iter().map(|t| t.1).collect();
        let mut b: Vec<u64> = g.terms().iter().map(|t| t.1).collect();
        a.sort_unstable();
        b.sort_unstable();
        prop_assert_eq!(a, b);
        for (m, _) in g.terms() {
            let outside: u32 = m.exps().iter().enumerate().filter(|(i, _)| i / NVARS != point).map(|(_, &e)| e as u32).sum();
            prop_assert_eq!(outside, 0);
        }
    }
}

#[test]
fn parse_and_print() {
    let r = ring();
    let p = r.parse("3*x_0_0^2*x_1_2 - x_0_1 + 5").unwrap();
    assert_eq!(p.to_string(), "3*x_0_0^2*x_1_2+32002*x_0_1+5");
    assert_eq!(r.parse(&p.to_string()).unwrap(), p);
    assert!(r.parse("y_0").is_err());
    assert_eq!(r.constant(r.field().from_i64(4)).to_string(), "4");
    assert!(!p.is_homogeneous());
    assert!(r.parse("x_0_0*x_1_0 - x_0_1*x_1_2").unwrap().is_multihomogeneous());
}
