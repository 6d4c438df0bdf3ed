use std::sync::{Arc, OnceLock};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::dimension::dimension_from_leading_monomials;
use super::engine::{self, Engine, GbStats, Reducers, Terms};
use crate::error::{Error, Result};
use crate::fields::Field;
use crate::poly::{Monomial, MonomialOrder, PolyRing, Polynomial};

/// Options for Groebner basis computations.
#[derive(Clone, Debug, Default)]
pub struct GbOptions {
    /// Re-check the result: generators reduce to zero and all S-pairs reduce to zero.
    pub verify: bool,
}

/// A reduced Groebner basis, sorted by descending leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: Arc<PolyRing<F>>,
    polys: Vec<Polynomial<F>>,
    pub stats: GbStats,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn polys(&self) -> &[Polynomial<F>] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().map(|p| p.leading_monomial().unwrap().clone()).collect()
    }

    /// Normal form of `f` modulo the basis.
    pub fn reduce(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        normal_form(f, &self.polys)
    }

    /// Krull dimension of the quotient ring; `-1` for the unit ideal.
    pub fn krull_dimension(&self) -> Result<i64> {
        dimension_from_leading_monomials(self.ring.nvars(), &self.leading_monomials())
    }
}

fn check_ring<F: Field>(ring: &Arc<PolyRing<F>>, polys: &[Polynomial<F>]) -> Result<()> {
    if polys.iter().all(|p| PolyRing::same(p.ring(), ring)) {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

fn reducers_of<F: Field>(basis: &[Polynomial<F>]) -> Reducers<F> {
    let field = basis.first().map(|p| p.field().clone());
    let mut r = Reducers::new();
    for p in basis.iter().filter(|p| !p.is_zero()) {
        let mut t = p.terms().to_vec();
        engine::make_monic(field.as_ref().unwrap(), &mut t);
        r.push(t);
    }
    r
}

/// Full normal form of `f` with respect to an arbitrary list of polynomials. The result is
/// canonical when `basis` is a Groebner basis.
pub fn normal_form<F: Field>(f: &Polynomial<F>, basis: &[Polynomial<F>]) -> Result<Polynomial<F>> {
    check_ring(f.ring(), basis)?;
    if basis.is_empty() {
        return Ok(f.clone());
    }
    let ring = f.ring();
    let reducers = reducers_of(basis);
    let terms = engine::normal_form(ring.field(), &ring.order(), &reducers, f.terms(), None)?;
    Ok(ring.from_terms(terms))
}

/// Reduced Groebner basis of `gens` with respect to the order of their ring.
pub fn buchberger<F: Field>(ring: &Arc<PolyRing<F>>, gens: &[Polynomial<F>], opts: &GbOptions) -> Result<GroebnerBasis<F>> {
    check_ring(ring, gens)?;
    let raw: Vec<Terms<F>> = gens.iter().filter(|p| !p.is_zero()).map(|p| p.terms().to_vec()).collect();
    let (basis, stats) = Engine::new(ring.field(), ring.order()).run(raw)?;
    let polys: Vec<Polynomial<F>> = basis.into_iter().map(|t| ring.from_terms(t)).collect();
    let gb = GroebnerBasis { ring: ring.clone(), polys, stats };
    if opts.verify {
        verify_basis(gens, &gb)?;
    }
    Ok(gb)
}

/// Checks that every generator reduces to zero modulo `gb` and that every S-pair of `gb`
/// reduces to zero.
pub fn verify_basis<F: Field>(gens: &[Polynomial<F>], gb: &GroebnerBasis<F>) -> Result<()> {
    let ring = &gb.ring;
    let (field, order) = (ring.field(), ring.order());
    if gb.polys.is_empty() {
        return match gens.iter().position(|g| !g.is_zero()) {
            Some(i) => Err(Error::BasisCheckFailed(format!("generator {i} does not reduce to zero"))),
            None => Ok(()),
        };
    }
    let reducers = reducers_of(&gb.polys);
    let is_zero_mod =
        |terms: &[(Monomial, F::Elem)]| -> Result<bool> { Ok(engine::normal_form(field, &order, &reducers, terms, None)?.is_empty()) };
    for (i, g) in gens.iter().enumerate() {
        if !is_zero_mod(g.terms())? {
            return Err(Error::BasisCheckFailed(format!("generator {i} does not reduce to zero")));
        }
    }
    let ps = &gb.polys;
    for i in 0..ps.len() {
        for j in i + 1..ps.len() {
            let (li, lj) = (ps[i].leading_monomial().unwrap(), ps[j].leading_monomial().unwrap());
            if li.is_coprime(lj) {
                continue;
            }
            let l = li.lcm(lj);
            let a = ps[i].mul_term(&l.checked_div(li).unwrap(), &field.inv(ps[i].leading_coeff().unwrap())?)?;
            let b = ps[j].mul_term(&l.checked_div(lj).unwrap(), &field.inv(ps[j].leading_coeff().unwrap())?)?;
            if !is_zero_mod(a.checked_sub(&b)?.terms())? {
                return Err(Error::BasisCheckFailed(format!("S-pair ({i}, {j}) does not reduce to zero")));
            }
        }
    }
    Ok(())
}

/// An ideal given by generators, with a lazily computed reduced Groebner basis.
#[derive(Debug)]
pub struct Ideal<F: Field> {
    ring: Arc<PolyRing<F>>,
    gens: Vec<Polynomial<F>>,
    gb: OnceLock<GroebnerBasis<F>>,
}

impl<F: Field> Clone for Ideal<F> {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(b) = self.gb.get() {
            let _ = gb.set(b.clone());
        }
        Ideal { ring: self.ring.clone(), gens: self.gens.clone(), gb }
    }
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: &Arc<PolyRing<F>>, gens: Vec<Polynomial<F>>) -> Result<Self> {
        check_ring(ring, &gens)?;
        let gens = gens.into_iter().filter(|p| !p.is_zero()).collect();
        Ok(Ideal { ring: ring.clone(), gens, gb: OnceLock::new() })
    }

    /// An ideal whose generators are already its reduced Groebner basis.
    fn from_basis(gb: GroebnerBasis<F>) -> Self {
        let cell = OnceLock::new();
        let ring = gb.ring.clone();
        let gens = gb.polys.clone();
        let _ = cell.set(gb);
        Ideal { ring, gens, gb: cell }
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn groebner(&self, opts: &GbOptions) -> Result<&GroebnerBasis<F>> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let gb = buchberger(&self.ring, &self.gens, opts)?;
        Ok(self.gb.get_or_init(|| gb))
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner(&GbOptions::default())?.is_unit())
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        Ok(self.groebner(&GbOptions::default())?.reduce(f)?.is_zero())
    }

    pub fn krull_dimension(&self) -> Result<i64> {
        self.groebner(&GbOptions::default())?.krull_dimension()
    }

    /// The ideal generated by both generator lists.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        let mut gens = self.gens.clone();
        check_ring(&self.ring, &other.gens)?;
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    /// Whether both ideals have the same reduced Groebner basis.
    pub fn equals(&self, other: &Self) -> Result<bool> {
        let a = self.groebner(&GbOptions::default())?;
        let b = other.groebner(&GbOptions::default())?;
        Ok(a.polys == b.polys)
    }
}

/// Intersection of `I` with the subring generated by the non-auxiliary variables.
/// The ideal's ring must carry an auxiliary block named `block`.
pub fn eliminate<F: Field>(ideal: &Ideal<F>, block: &str, opts: &GbOptions) -> Result<Ideal<F>> {
    let layout = ideal.ring.layout();
    let aux = layout.aux().filter(|b| b.name() == block).ok_or_else(|| Error::UnknownBlock(block.into()))?;
    let main = aux.range().start;
    let elim_ring = ideal.ring.with_order(MonomialOrder::Elimination { main });
    let gens = ideal.gens.iter().map(|g| g.reorder(&elim_ring)).collect::<Result<Vec<_>>>()?;
    let gb = buchberger(&elim_ring, &gens, opts)?;
    let target = ideal.ring.with_layout(layout.without_aux(), MonomialOrder::DegRevLex);
    let mut kept = Vec::new();
    for p in gb.polys() {
        if p.terms().iter().all(|(m, _)| m.exps()[main..].iter().all(|&e| e == 0)) {
            let truncated = p.terms().iter().map(|(m, c)| (Monomial::new(&m.exps()[..main]), c.clone()));
            kept.push(target.from_terms(truncated));
        }
    }
    // The restriction of the elimination order to the main block is degrevlex, so the
    // surviving elements are already the reduced basis of the elimination ideal.
    kept.sort_by(|a, b| target.order().compare(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    Ok(Ideal::from_basis(GroebnerBasis { ring: target, polys: kept, stats: gb.stats }))
}

fn with_aux_ring<F: Field>(ring: &Arc<PolyRing<F>>, count: usize) -> Result<Arc<PolyRing<F>>> {
    if ring.layout().aux().is_some() {
        return Err(Error::LayoutMismatch);
    }
    Ok(ring.with_layout(ring.layout().with_aux(count), MonomialOrder::DegRevLex))
}

/// `I ∩ K`, computed by eliminating `t` from `t I + (1 - t) K`.
pub fn ideal_intersection<F: Field>(i: &Ideal<F>, k: &Ideal<F>, opts: &GbOptions) -> Result<Ideal<F>> {
    if !PolyRing::same(&i.ring, &k.ring) {
        return Err(Error::RingMismatch);
    }
    let ext = with_aux_ring(&i.ring, 1)?;
    let t = ext.var(i.ring.nvars());
    let one_minus_t = ext.one().checked_sub(&t)?;
    let mut gens = Vec::new();
    for g in &i.gens {
        gens.push(g.extend_to(&ext)?.checked_mul(&t)?);
    }
    for g in &k.gens {
        gens.push(g.extend_to(&ext)?.checked_mul(&one_minus_t)?);
    }
    eliminate(&Ideal::new(&ext, gens)?, "aux", opts)
}

/// `I : g^∞`. Homogeneous input uses a weighted degrevlex basis of `I + (y - g)` with `y`
/// of degree `deg g`; otherwise the Rabinowitsch trick.
pub fn saturate<F: Field>(ideal: &Ideal<F>, g: &Polynomial<F>, opts: &GbOptions) -> Result<Ideal<F>> {
    check_ring(&ideal.ring, std::slice::from_ref(g))?;
    let homogeneous = ideal.gens.iter().all(Polynomial::is_homogeneous) && g.is_homogeneous();
    match g.total_degree() {
        Some(d) if d > 0 && homogeneous && ideal.ring.layout().aux().is_none() => saturate_graded(ideal, g, d, opts),
        _ => saturate_many(ideal, std::slice::from_ref(g), opts),
    }
}

/// `I : g^∞` by the Rabinowitsch trick, regardless of homogeneity.
pub fn saturate_rabinowitsch<F: Field>(ideal: &Ideal<F>, g: &Polynomial<F>, opts: &GbOptions) -> Result<Ideal<F>> {
    saturate_many(ideal, std::slice::from_ref(g), opts)
}

// For homogeneous I and g of degree d, J = I + (y - g) is homogeneous when y has degree d.
// In a degrevlex order with y last, dividing a basis of J by the largest powers of y gives
// a basis of J : y^∞ = (I : g^∞) + (y - g), and substituting y = g recovers I : g^∞.
fn saturate_graded<F: Field>(ideal: &Ideal<F>, g: &Polynomial<F>, d: u32, opts: &GbOptions) -> Result<Ideal<F>> {
    let n = ideal.ring.nvars();
    let ext = ideal.ring.with_layout(ideal.ring.layout().with_aux(1), MonomialOrder::WeightedLast { weight: d });
    let mut gens = ideal.gens.iter().map(|p| p.extend_to(&ext)).collect::<Result<Vec<_>>>()?;
    gens.push(ext.var(n).checked_sub(&g.extend_to(&ext)?)?);
    let gb = buchberger(&ext, &gens, opts)?;
    let mut powers = vec![ideal.ring.one()];
    let mut out = Vec::with_capacity(gb.len());
    for p in gb.polys() {
        let shift = p.terms().iter().map(|(m, _)| m.exps()[n]).min().unwrap_or(0);
        let mut acc = crate::poly::PolyAccumulator::new(&ideal.ring);
        for (m, c) in p.terms() {
            let e = (m.exps()[n] - shift) as usize;
            while powers.len() <= e {
                let next = powers.last().expect("nonempty").checked_mul(g)?;
                powers.push(next);
            }
            let x = ideal.ring.monomial(Monomial::new(&m.exps()[..n]), c.clone());
            acc.add_product(&x, &powers[e], &ideal.ring.field().one())?;
        }
        out.push(acc.finish());
    }
    Ideal::new(&ideal.ring, out)
}

/// `I : (g_1 ... g_s)^∞`, eliminating one auxiliary variable per saturating polynomial.
pub fn saturate_many<F: Field>(ideal: &Ideal<F>, gs: &[Polynomial<F>], opts: &GbOptions) -> Result<Ideal<F>> {
    check_ring(&ideal.ring, gs)?;
    if gs.iter().any(Polynomial::is_zero) {
        return Err(Error::ZeroSaturator);
    }
    if gs.is_empty() {
        return Ok(ideal.clone());
    }
    let n = ideal.ring.nvars();
    let ext = with_aux_ring(&ideal.ring, gs.len())?;
    let mut gens = ideal.gens.iter().map(|g| g.extend_to(&ext)).collect::<Result<Vec<_>>>()?;
    for (k, g) in gs.iter().enumerate() {
        let tg = g.extend_to(&ext)?.checked_mul(&ext.var(n + k))?;
        gens.push(tg.checked_sub(&ext.one())?);
    }
    eliminate(&Ideal::new(&ext, gens)?, "aux", opts)
}

/// How saturation by an ideal with several generators is carried out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SaturationStrategy {
    /// Intersect the saturations by every generator.
    Exact,
    /// Saturate by one seeded random linear combination of the generators. Agrees with the
    /// exact result outside a proper Zariski-closed set of coefficient choices.
    Generic { seed: u64 },
}

/// A seeded random linear combination of the given polynomials.
pub fn random_combination<F: Field>(ring: &Arc<PolyRing<F>>, polys: &[Polynomial<F>], seed: u64) -> Result<Polynomial<F>> {
    check_ring(ring, polys)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = ring.field();
    let mut acc = crate::poly::PolyAccumulator::new(ring);
    for p in polys {
        let c = field.random_nonzero(&mut rng);
        acc.add_scaled(p, &c);
    }
    Ok(acc.finish())
}

/// `I : J^∞`.
pub fn saturate_by_ideal<F: Field>(
    ideal: &Ideal<F>,
    j: &Ideal<F>,
    strategy: SaturationStrategy,
    opts: &GbOptions,
) -> Result<Ideal<F>> {
    if !PolyRing::same(&ideal.ring, &j.ring) {
        return Err(Error::RingMismatch);
    }
    if j.gens.is_empty() {
        return Err(Error::ZeroSaturator);
    }
    match strategy {
        SaturationStrategy::Generic { seed } if j.gens.len() > 1 => {
            let g = random_combination(&ideal.ring, &j.gens, seed)?;
            saturate(ideal, &g, opts)
        }
        _ => {
            let mut acc: Option<Ideal<F>> = None;
            for g in &j.gens {
                let s = saturate(ideal, g, opts)?;
                acc = Some(match acc {
                    None => s,
                    Some(a) => ideal_intersection(&a, &s, opts)?,
                });
            }
            Ok(acc.expect("at least one generator"))
        }
    }
}

/// Krull dimension of the quotient by `I`; `-1` for the unit ideal.
pub fn krull_dimension<F: Field>(ideal: &Ideal<F>) -> Result<i64> {
    ideal.krull_dimension()
}
