use std::sync::Arc;

use proptest::prelude::*;
use terracini::fields::{Field, PrimeField};
use terracini::groebner::{saturate, saturate_by_ideal, GbOptions, Ideal, SaturationStrategy};
use terracini::poly::{Monomial, MonomialOrder, PolyRing, Polynomial, VariableLayout};

type Ring = Arc<PolyRing<PrimeField>>;
type P = Polynomial<PrimeField>;

fn ring() -> Ring {
    PolyRing::new(PrimeField::new(32003).unwrap(), VariableLayout::source(&[2]), MonomialOrder::DegRevLex)
}

fn terms() -> impl Strategy<Value = Vec<(Vec<u16>, i64)>> {
    prop::collection::vec((prop::collection::vec(0u16..3, 3), 1i64..50), 1..4)
}

fn build(r: &Ring, t: &[(Vec<u16>, i64)]) -> P {
    r.from_terms(t.iter().map(|(e, c)| (Monomial::new(e), r.field().from_i64(*c))))
}

fn ideal(r: &Ring, gens: &[Vec<(Vec<u16>, i64)>]) -> Ideal<PrimeField> {
    Ideal::new(r, gens.iter().map(|t| build(r, t)).collect()).unwrap()
}

fn verified() -> GbOptions {
    GbOptions { verify: true }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn membership_does_not_depend_on_the_order(gens in prop::collection::vec(terms(), 1..3), cofactor in terms(), extra in terms(), main in 1usize..3) {
        let r = ring();
        let i = ideal(&r, &gens);
        let f = build(&r, &cofactor).checked_mul(i.generators().first().unwrap()).unwrap();
        let g = f.checked_add(&build(&r, &extra)).unwrap();
        let elim = r.with_order(MonomialOrder::Elimination { main });
        let moved = Ideal::new(&elim, i.generators().iter().map(|p| p.reorder(&elim).unwrap()).collect()).unwrap();
        for h in [&f, &g] {
            prop_assert_eq!(i.contains(h).unwrap(), moved.contains(&h.reorder(&elim).unwrap()).unwrap());
        }
        prop_assert!(i.contains(&f).unwrap());
        i.groebner(&verified()).unwrap();
        moved.groebner(&verified()).unwrap();
    }

    #[test]
    fn krull_dimension_ignores_generator_choice(gens in prop::collection::vec(terms(), 1..4), mix in prop::collection::vec(1i64..100, 16)) {
        let r = ring();
        let i = ideal(&r, &gens);
        let g = i.generators();
        let n = g.len();
        let mixed: Vec<P> = (0..n)
            .map(|a| {
                (0..n).fold(r.zero(), |acc, b| {
                    let c = if a == b { mix[a * 4 + b] } else if b > a { mix[a * 4 + b] } else { 0 };
                    acc.checked_add(&g[b].scale(&r.field().from_i64(c))).unwrap()
                })
            })
            .collect();
        let j = Ideal::new(&r, mixed).unwrap();
        prop_assert!(i.equals(&j).unwrap());
        prop_assert_eq!(i.krull_dimension().unwrap(), j.krull_dimension().unwrap());
    }

    #[test]
    fn saturation_grows_and_is_idempotent(gens in prop::collection::vec(terms(), 1..3), g in terms()) {
        let r = ring();
        let i = ideal(&r, &gens);
        let g = build(&r, &g);
        let s = saturate(&i, &g, &verified()).unwrap();
        for p in i.generators() {
            prop_assert!(s.contains(p).unwrap());
        }
        let again = saturate(&s, &g, &verified()).unwrap();
        prop_assert!(again.equals(&s).unwrap());
    }

    #[test]
    fn saturating_by_a_product_is_sequential(gens in prop::collection::vec(terms(), 1..3), a in terms(), b in terms()) {
        let r = ring();
        let i = ideal(&r, &gens);
        let (a, b) = (build(&r, &a), build(&r, &b));
        let j1 = Ideal::new(&r, vec![a.clone()]).unwrap();
        let j2 = Ideal::new(&r, vec![b.clone()]).unwrap();
        let product = Ideal::new(&r, vec![a.checked_mul(&b).unwrap()]).unwrap();
        let opts = verified();
        let direct = saturate_by_ideal(&i, &product, SaturationStrategy::Exact, &opts).unwrap();
        let step = saturate_by_ideal(&i, &j1, SaturationStrategy::Exact, &opts).unwrap();
        let sequential = saturate_by_ideal(&step, &j2, SaturationStrategy::Exact, &opts).unwrap();
        prop_assert!(direct.equals(&sequential).unwrap());
    }
}

#[test]
fn dimension_examples() {
    let r = ring();
    let p = |s: &str| r.parse(s).unwrap();
    assert_eq!(Ideal::new(&r, vec![r.one()]).unwrap().krull_dimension().unwrap(), -1);
    assert_eq!(Ideal::new(&r, vec![p("x_0_0")]).unwrap().krull_dimension().unwrap(), 2);
    let cusp = Ideal::new(&r, vec![p("x_0_1^2*x_0_2 - x_0_0^3")]).unwrap();
    assert_eq!(cusp.krull_dimension().unwrap(), 2);
    let point = Ideal::new(&r, vec![p("x_0_0"), p("x_0_1"), p("x_0_2")]).unwrap();
    assert_eq!(point.krull_dimension().unwrap(), 0);
    let sat = saturate(&Ideal::new(&r, vec![p("x_0_0*x_0_1"), p("x_0_0*x_0_2")]).unwrap(), &p("x_0_0"), &verified()).unwrap();
    assert!(sat.equals(&Ideal::new(&r, vec![p("x_0_1"), p("x_0_2")]).unwrap()).unwrap());
}
