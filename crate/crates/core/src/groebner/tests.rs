//! Cross-checks against a deliberately naive Buchberger implementation.

use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::fields::{Field, PrimeField, RationalField};
use crate::poly::{Monomial, MonomialOrder, PolyRing, Polynomial, VariableLayout};

fn ring_q(names: &[&str]) -> Arc<PolyRing<RationalField>> {
    PolyRing::new(RationalField, VariableLayout::from_names(names).unwrap(), MonomialOrder::DegRevLex)
}

fn ring_p(names: &[&str]) -> Arc<PolyRing<PrimeField>> {
    PolyRing::new(PrimeField::new(32003).unwrap(), VariableLayout::from_names(names).unwrap(), MonomialOrder::DegRevLex)
}

fn parse_all<F: Field>(r: &Arc<PolyRing<F>>, gens: &[&str]) -> Vec<Polynomial<F>> {
    gens.iter().map(|g| r.parse(g).unwrap()).collect()
}

/// Textbook Buchberger: every pair, plain division, final interreduction.
mod naive {
    use super::*;

    type P = BTreeMap<Vec<u16>, u64>;

    pub struct Ctx {
        pub f: PrimeField,
        pub order: MonomialOrder,
    }

    impl Ctx {
        fn lead(&self, p: &P) -> Option<Vec<u16>> {
            p.keys().max_by(|a, b| self.order.compare(&Monomial::new(a), &Monomial::new(b))).cloned()
        }

        fn sub_scaled(&self, p: &mut P, q: &P, shift: &[u16], c: u64) {
            for (m, a) in q {
                let key: Vec<u16> = m.iter().zip(shift).map(|(x, y)| x + y).collect();
                let v = self.f.sub(p.get(&key).unwrap_or(&0), &self.f.mul(a, &c));
                if v == 0 {
                    p.remove(&key);
                } else {
                    p.insert(key, v);
                }
            }
        }

        fn divides(a: &[u16], b: &[u16]) -> bool {
            a.iter().zip(b).all(|(x, y)| x <= y)
        }

        pub fn reduce(&self, mut p: P, basis: &[P]) -> P {
            let mut out = P::new();
            while let Some(m) = self.lead(&p) {
                let c = p[&m];
                match basis.iter().find(|g| Self::divides(&self.lead(g).unwrap(), &m)) {
                    Some(g) => {
                        let lg = self.lead(g).unwrap();
                        let shift: Vec<u16> = m.iter().zip(&lg).map(|(x, y)| x - y).collect();
                        let coef = self.f.div(&c, &g[&lg]).unwrap();
                        self.sub_scaled(&mut p, g, &shift, coef);
                    }
                    None => {
                        p.remove(&m);
                        out.insert(m, c);
                    }
                }
            }
            out
        }

        fn monic(&self, p: &P) -> P {
            let lc = p[&self.lead(p).unwrap()];
            let inv = self.f.inv(&lc).unwrap();
            p.iter().map(|(m, c)| (m.clone(), self.f.mul(c, &inv))).collect()
        }

        pub fn groebner(&self, gens: Vec<P>) -> Vec<P> {
            let mut g: Vec<P> = gens.into_iter().filter(|p| !p.is_empty()).collect();
            let mut pairs: Vec<(usize, usize)> = (0..g.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
            while let Some((i, j)) = pairs.pop() {
                let (li, lj) = (self.lead(&g[i]).unwrap(), self.lead(&g[j]).unwrap());
                let l: Vec<u16> = li.iter().zip(&lj).map(|(a, b)| *a.max(b)).collect();
                let mut s = P::new();
                let si: Vec<u16> = l.iter().zip(&li).map(|(a, b)| a - b).collect();
                let sj: Vec<u16> = l.iter().zip(&lj).map(|(a, b)| a - b).collect();
                self.sub_scaled(&mut s, &g[i], &si, self.f.neg(&self.f.inv(&g[i][&li]).unwrap()));
                self.sub_scaled(&mut s, &g[j], &sj, self.f.inv(&g[j][&lj]).unwrap());
                let h = self.reduce(s, &g);
                if !h.is_empty() {
                    let k = g.len();
                    g.push(h);
                    pairs.extend((0..k).map(|i| (i, k)));
                }
            }
            // Minimalize and interreduce.
            let mut minimal: Vec<P> = Vec::new();
            for (k, p) in g.iter().enumerate() {
                let lp = self.lead(p).unwrap();
                let redundant = g.iter().enumerate().any(|(o, q)| {
                    let lq = self.lead(q).unwrap();
                    o != k && Self::divides(&lq, &lp) && (lq != lp || o < k)
                });
                if !redundant {
                    minimal.push(self.monic(p));
                }
            }
            let mut out = Vec::new();
            for k in 0..minimal.len() {
                let others: Vec<P> = minimal.iter().enumerate().filter(|(o, _)| *o != k).map(|(_, q)| q.clone()).collect();
                let lp = self.lead(&minimal[k]).unwrap();
                let mut tail = minimal[k].clone();
                let c = tail.remove(&lp).unwrap();
                let mut r = self.reduce(tail, &others);
                r.insert(lp, c);
                out.push(r);
            }
            out.sort_by(|a, b| self.order.compare(&Monomial::new(&self.lead(b).unwrap()), &Monomial::new(&self.lead(a).unwrap())));
            out
        }
    }
}

fn to_map(p: &Polynomial<PrimeField>) -> BTreeMap<Vec<u16>, u64> {
    p.terms().iter().map(|(m, c)| (m.exps().to_vec(), *c)).collect()
}

#[test]
fn twisted_cubic() {
    let r = ring_q(&["x", "y", "z", "w"]);
    let gens = parse_all(&r, &["x*z-y^2", "y*w-z^2", "x*w-y*z"]);
    let gb = buchberger(&r, &gens, &GbOptions { verify: true }).unwrap();
    let text: Vec<String> = gb.polys().iter().map(|p| p.to_string()).collect();
    assert_eq!(text, vec!["y^2-x*z", "y*z-x*w", "z^2-y*w"]);
    assert_eq!(gb.krull_dimension().unwrap(), 2);
}

#[test]
fn unit_and_zero_ideals() {
    let r = ring_p(&["x", "y"]);
    let gens = parse_all(&r, &["x^2-1", "x*y", "y-1"]);
    let gb = buchberger(&r, &gens, &GbOptions::default()).unwrap();
    assert!(gb.is_unit());
    assert_eq!(gb.krull_dimension().unwrap(), -1);
    let zero = Ideal::new(&r, vec![r.zero()]).unwrap();
    assert_eq!(zero.krull_dimension().unwrap(), 2);
}

#[test]
fn saturation_removes_embedded_line() {
    let r = ring_q(&["x", "y", "z"]);
    let i = Ideal::new(&r, parse_all(&r, &["x*y", "x*z"])).unwrap();
    let j = Ideal::new(&r, parse_all(&r, &["y", "z"])).unwrap();
    let opts = GbOptions { verify: true };
    for strategy in [SaturationStrategy::Exact, SaturationStrategy::Generic { seed: 3 }] {
        let s = saturate_by_ideal(&i, &j, strategy, &opts).unwrap();
        let gb = s.groebner(&opts).unwrap();
        let text: Vec<String> = gb.polys().iter().map(|p| p.to_string()).collect();
        assert_eq!(text, vec!["x"]);
    }
    assert!(saturate(&i, &r.zero(), &opts).is_err());
}

#[test]
fn intersection_and_elimination() {
    let r = ring_q(&["x", "y"]);
    let a = Ideal::new(&r, parse_all(&r, &["x"])).unwrap();
    let b = Ideal::new(&r, parse_all(&r, &["y"])).unwrap();
    let c = ideal_intersection(&a, &b, &GbOptions { verify: true }).unwrap();
    assert_eq!(c.generators()[0].to_string(), "x*y");
    // Twisted cubic from its parametrization.
    let layout = VariableLayout::new([("main", vec!["x".into(), "y".into(), "z".into(), "w".into()])]).unwrap().with_aux(2);
    let ext = PolyRing::new(RationalField, layout, MonomialOrder::DegRevLex);
    let gens = parse_all(&ext, &["x-t_0^3", "y-t_0^2*t_1", "z-t_0*t_1^2", "w-t_1^3"]);
    let e = eliminate(&Ideal::new(&ext, gens).unwrap(), "aux", &GbOptions::default()).unwrap();
    let text: Vec<String> = e.generators().iter().map(|p| p.to_string()).collect();
    assert_eq!(text, vec!["y^2-x*z", "y*z-x*w", "z^2-y*w"]);
    assert!(eliminate(&a, "aux", &GbOptions::default()).is_err());
}

#[test]
fn normal_form_is_canonical_modulo_basis() {
    let r = ring_q(&["x", "y", "z"]);
    let gens = parse_all(&r, &["x^2+y*z-1", "y^2-x*z"]);
    let gb = buchberger(&r, &gens, &GbOptions::default()).unwrap();
    let f = r.parse("x^3*y-z^4+x").unwrap();
    let g = &f + &(&gens[0] * &r.parse("x*z-y+7").unwrap());
    assert_eq!(gb.reduce(&f).unwrap(), gb.reduce(&g).unwrap());
}

fn small_poly(nvars: usize) -> impl Strategy<Value = Vec<(Vec<u16>, u64)>> {
    prop::collection::vec((prop::collection::vec(0u16..3, nvars), 1u64..32003), 1..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn matches_naive_buchberger(polys in prop::collection::vec(small_poly(3), 1..4)) {
        let r = ring_p(&["x", "y", "z"]);
        let f = *r.field();
        let gens: Vec<Polynomial<PrimeField>> = polys.iter().map(|terms| {
            r.from_terms(terms.iter().map(|(e, c)| {
                let mut e = e.clone();
                let d: u16 = e.iter().sum();
                e[2] += 6 - d;
                (Monomial::new(&e), *c)
            }))
        }).collect();
        let gb = buchberger(&r, &gens, &GbOptions { verify: true }).unwrap();
        let ctx = naive::Ctx { f, order: MonomialOrder::DegRevLex };
        let expected = ctx.groebner(gens.iter().map(to_map).collect());
        let got: Vec<_> = gb.polys().iter().map(to_map).collect();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn generators_reduce_to_zero(polys in prop::collection::vec(small_poly(4), 1..4)) {
        let r = ring_p(&["a", "b", "c", "d"]);
        let gens: Vec<_> = polys.iter().map(|t| r.from_terms(t.iter().map(|(e, c)| (Monomial::new(e), *c)))).collect();
        let gb = buchberger(&r, &gens, &GbOptions::default()).unwrap();
        for g in &gens {
            prop_assert!(gb.reduce(g).unwrap().is_zero());
        }
        verify_basis(&gens, &gb).unwrap();
    }

    #[test]
    fn graded_saturation_matches_rabinowitsch(
        polys in prop::collection::vec(small_poly(3), 1..4),
        sat in small_poly(3),
    ) {
        let r = ring_p(&["x", "y", "z"]);
        let homogenize = |terms: &Vec<(Vec<u16>, u64)>, deg: u16| {
            r.from_terms(terms.iter().map(|(e, c)| {
                let mut e = e.clone();
                let d: u16 = e.iter().sum();
                e[2] += deg - d;
                (Monomial::new(&e), *c)
            }))
        };
        let gens: Vec<_> = polys.iter().map(|t| homogenize(t, 6)).collect();
        let g = homogenize(&sat, 6);
        let i = Ideal::new(&r, gens).unwrap();
        let opts = GbOptions { verify: true };
        let graded = saturate(&i, &g, &opts).unwrap();
        let classic = saturate_rabinowitsch(&i, &g, &opts).unwrap();
        prop_assert!(graded.equals(&classic).unwrap());
    }
}
