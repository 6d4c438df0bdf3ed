use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::{Monomial, MonomialOrder, VariableLayout};
use crate::error::{Error, Result};
use crate::fields::Field;

/// A polynomial ring: coefficient field, variable layout and active monomial order.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing<F: Field> {
    field: F,
    layout: Arc<VariableLayout>,
    order: MonomialOrder,
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: F, layout: impl Into<Arc<VariableLayout>>, order: MonomialOrder) -> Arc<Self> {
        Arc::new(PolyRing { field, layout: layout.into(), order })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn layout(&self) -> &Arc<VariableLayout> {
        &self.layout
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.layout.nvars()
    }

    /// The same ring with a different monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Arc<Self> {
        Arc::new(PolyRing { field: self.field.clone(), layout: self.layout.clone(), order })
    }

    /// The same field and order over another layout.
    pub fn with_layout(&self, layout: VariableLayout, order: MonomialOrder) -> Arc<Self> {
        Arc::new(PolyRing { field: self.field.clone(), layout: Arc::new(layout), order })
    }

    pub fn same(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }

    pub fn zero(self: &Arc<Self>) -> Polynomial<F> {
        Polynomial { ring: self.clone(), terms: Vec::new() }
    }

    pub fn constant(self: &Arc<Self>, c: F::Elem) -> Polynomial<F> {
        self.monomial(Monomial::one(self.nvars()), c)
    }

    pub fn one(self: &Arc<Self>) -> Polynomial<F> {
        self.constant(self.field.one())
    }

    /// The variable with flat index `i`.
    pub fn var(self: &Arc<Self>, i: usize) -> Polynomial<F> {
        self.monomial(Monomial::var(self.nvars(), i, 1), self.field.one())
    }

    pub fn monomial(self: &Arc<Self>, m: Monomial, c: F::Elem) -> Polynomial<F> {
        assert_eq!(m.nvars(), self.nvars(), "monomial length must match the ring");
        let terms = if self.field.is_zero(&c) { Vec::new() } else { vec![(m, c)] };
        Polynomial { ring: self.clone(), terms }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates and dropping zeros.
    pub fn from_terms(self: &Arc<Self>, terms: impl IntoIterator<Item = (Monomial, F::Elem)>) -> Polynomial<F> {
        let mut acc = PolyAccumulator::new(self);
        for (m, c) in terms {
            acc.add_term(m, &c);
        }
        acc.finish()
    }

    /// Builds a polynomial from terms already sorted strictly descending with nonzero coefficients.
    #[allow(dead_code)]
    pub(crate) fn from_sorted_terms(self: &Arc<Self>, terms: Vec<(Monomial, F::Elem)>) -> Polynomial<F> {
        debug_assert!(terms.windows(2).all(|w| self.order.compare(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !self.field.is_zero(c)));
        Polynomial { ring: self.clone(), terms }
    }

    /// Parses the canonical text form (and a slightly more permissive superset).
    pub fn parse(self: &Arc<Self>, text: &str) -> Result<Polynomial<F>> {
        super::text::parse(self, text)
    }
}

/// A sparse polynomial with terms sorted strictly descending in the ring's order.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Arc<PolyRing<F>>,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        PolyRing::same(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::format(self))
    }
}

impl<F: Field> Polynomial<F> {
    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        &self.ring.field
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F::Elem)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.terms.first().map(|t| &t.1)
    }

    /// Largest total degree of a term, `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.degree() == w[1].0.degree())
    }

    /// Whether all terms share one multidegree with respect to the layout's blocks.
    pub fn is_multihomogeneous(&self) -> bool {
        let layout = &self.ring.layout;
        let mut degs = self.terms.iter().map(|(m, _)| layout.multidegree(m.exps()));
        match degs.next() {
            None => true,
            Some(first) => degs.all(|d| d == first),
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if PolyRing::same(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn merge(&self, other: &Self, negate: bool) -> Polynomial<F> {
        let field = &self.ring.field;
        let order = self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let sign = |c: &F::Elem| if negate { field.neg(c) } else { c.clone() };
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match order.compare(&a.0, &b.0) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b.0.clone(), sign(&b.1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { field.sub(&a.1, &b.1) } else { field.add(&a.1, &b.1) };
                    if !field.is_zero(&c) {
                        out.push((a.0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, c)| (m.clone(), sign(c))));
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut acc = PolyAccumulator::new(&self.ring);
        acc.add_product(self, other, &self.ring.field.one())?;
        Ok(acc.finish())
    }

    pub fn neg(&self) -> Self {
        let field = &self.ring.field;
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), field.neg(c))).collect() }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let field = &self.ring.field;
        if field.is_zero(c) {
            return self.ring.zero();
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), field.mul(a, c))).collect(),
        }
    }

    /// `c * m * self`; the term order is preserved so no sorting is needed.
    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Result<Self> {
        let field = &self.ring.field;
        if field.is_zero(c) {
            return Ok(self.ring.zero());
        }
        let terms = self
            .terms
            .iter()
            .map(|(t, a)| Ok((t.checked_mul(m)?, field.mul(a, c))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = self.ring.one();
        for _ in 0..n {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// Scales so that the leading coefficient is one; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => self.scale(&self.ring.field.inv(lc).expect("leading coefficient is nonzero")),
        }
    }

    /// Formal partial derivative with respect to the variable with flat index `var`.
    pub fn derivative(&self, var: usize) -> Result<Self> {
        if var >= self.ring.nvars() {
            return Err(Error::MissingAssignment(var));
        }
        let field = &self.ring.field;
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exps()[var];
            if e == 0 {
                continue;
            }
            let c = field.mul(c, &field.from_i64(e as i64));
            if field.is_zero(&c) {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[var] -= 1;
            terms.push((Monomial::new(&exps), c));
        }
        // Lowering one exponent can reorder terms of different degree patterns.
        Ok(self.ring.from_terms(terms))
    }

    /// Evaluates at a point given in flat variable order. The point may be shorter than the
    /// number of variables as long as no missing variable occurs.
    pub fn evaluate(&self, point: &[F::Elem]) -> Result<F::Elem> {
        let field = &self.ring.field;
        let mut total = field.zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for i in m.support() {
                let x = point.get(i).ok_or(Error::MissingAssignment(i))?;
                for _ in 0..m.exps()[i] {
                    v = field.mul(&v, x);
                }
            }
            field.add_assign(&mut total, &v);
        }
        Ok(total)
    }

    /// Relabels variables: variable `i` of `self` becomes variable `map[i]` of `target`.
    pub fn rename(&self, target: &Arc<PolyRing<F>>, map: &[usize]) -> Result<Self> {
        if map.len() != self.ring.nvars() || map.iter().any(|&j| j >= target.nvars()) {
            return Err(Error::LayoutMismatch);
        }
        if target.field != self.ring.field {
            return Err(Error::RingMismatch);
        }
        let n = target.nvars();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut exps = vec![0u16; n];
            for (i, &e) in m.exps().iter().enumerate() {
                exps[map[i]] += e;
            }
            (Monomial::new(&exps), c.clone())
        });
        Ok(target.from_terms(terms))
    }

    /// Copies a polynomial in the source variables `x_{f}_{j}` into the point block
    /// `z_{point}_{f}_{j}` of a configuration ring.
    pub fn substitute_block(&self, target: &Arc<PolyRing<F>>, point: usize) -> Result<Self> {
        let src = &self.ring.layout;
        let dst = &target.layout;
        let mut map = vec![0; src.nvars()];
        for (f, block) in src.blocks().iter().enumerate() {
            let to = dst.block(&format!("z_{point}_{f}"))?;
            if to.len() != block.len() {
                return Err(Error::LayoutMismatch);
            }
            for (k, i) in block.range().enumerate() {
                map[i] = to.range().start + k;
            }
        }
        if src.aux().is_some() {
            return Err(Error::LayoutMismatch);
        }
        self.rename(target, &map)
    }

    /// Moves the polynomial into a ring with the same field and layout but another order.
    pub fn reorder(&self, target: &Arc<PolyRing<F>>) -> Result<Self> {
        if target.field != self.ring.field || target.layout != self.ring.layout {
            return Err(Error::RingMismatch);
        }
        let mut terms = self.terms.clone();
        let order = target.order;
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        Ok(Polynomial { ring: target.clone(), terms })
    }

    /// Embeds into a ring whose layout extends this one by trailing variables.
    pub fn extend_to(&self, target: &Arc<PolyRing<F>>) -> Result<Self> {
        let map: Vec<usize> = (0..self.ring.nvars()).collect();
        if target.nvars() < self.ring.nvars() {
            return Err(Error::LayoutMismatch);
        }
        self.rename(target, &map)
    }

    /// Maps coefficients into another field over the target ring, which must have the same
    /// number of variables.
    pub fn map_coefficients<G: Field>(
        &self,
        target: &Arc<PolyRing<G>>,
        f: impl Fn(&F::Elem) -> Result<G::Elem>,
    ) -> Result<Polynomial<G>> {
        if target.nvars() != self.ring.nvars() {
            return Err(Error::LayoutMismatch);
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let c = f(c)?;
            if !target.field.is_zero(&c) {
                terms.push((m.clone(), c));
            }
        }
        if target.order == self.ring.order {
            Ok(Polynomial { ring: target.clone(), terms })
        } else {
            Ok(target.from_terms(terms))
        }
    }

    /// Exact quotient `self / divisor`; fails when the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        self.check_ring(divisor)?;
        let field = &self.ring.field;
        let order = self.ring.order;
        let (lm, lc) = divisor.terms.first().ok_or(Error::DivisionByZero)?;
        let lc_inv = field.inv(lc)?;
        let mut rem: FxHashMap<Monomial, F::Elem> = self.terms.iter().cloned().collect();
        let mut heap: BinaryHeap<Ordered> = self.terms.iter().map(|(m, _)| Ordered(m.clone(), order)).collect();
        let mut quotient = Vec::new();
        while let Some(Ordered(m, _)) = heap.pop() {
            let Some(c) = rem.remove(&m) else { continue };
            if field.is_zero(&c) {
                continue;
            }
            let q = m.checked_div(lm).ok_or(Error::NotDivisible)?;
            let qc = field.mul(&c, &lc_inv);
            for (dm, dc) in &divisor.terms[1..] {
                let t = q.checked_mul(dm)?;
                match rem.get_mut(&t) {
                    Some(v) => field.sub_mul_assign(v, &qc, dc),
                    None => {
                        let mut v = field.zero();
                        field.sub_mul_assign(&mut v, &qc, dc);
                        rem.insert(t.clone(), v);
                        heap.push(Ordered(t, order));
                    }
                }
            }
            quotient.push((q, qc));
        }
        Ok(Polynomial { ring: self.ring.clone(), terms: quotient })
    }
}

/// A monomial compared by a monomial order, for use in heaps.
struct Ordered(Monomial, MonomialOrder);

impl PartialEq for Ordered {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl Eq for Ordered {}

impl PartialOrd for Ordered {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ordered {
    fn cmp(&self, other: &Self) -> Ordering {
        self.1.compare(&self.0, &other.0)
    }
}

macro_rules! forward_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<F: Field> std::ops::$trait for &Polynomial<F> {
            type Output = Polynomial<F>;
            /// Panics when the operands live in different rings.
            fn $method(self, rhs: &Polynomial<F>) -> Polynomial<F> {
                self.$checked(rhs).expect("polynomial arithmetic")
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

impl<F: Field> std::ops::Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial::neg(self)
    }
}

/// Hash-based accumulator for sums of many terms and products.
pub struct PolyAccumulator<F: Field> {
    ring: Arc<PolyRing<F>>,
    map: FxHashMap<Monomial, F::Elem>,
}

impl<F: Field> PolyAccumulator<F> {
    pub fn new(ring: &Arc<PolyRing<F>>) -> Self {
        PolyAccumulator { ring: ring.clone(), map: FxHashMap::default() }
    }

    pub fn add_term(&mut self, m: Monomial, c: &F::Elem) {
        let field = &self.ring.field;
        if field.is_zero(c) {
            return;
        }
        match self.map.entry(m) {
            std::collections::hash_map::Entry::Occupied(mut e) => field.add_assign(e.get_mut(), c),
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, p: &Polynomial<F>, c: &F::Elem) {
        let field = self.ring.field.clone();
        for (m, a) in &p.terms {
            self.add_term(m.clone(), &field.mul(a, c));
        }
    }

    /// Adds `c * a * b`.
    pub fn add_product(&mut self, a: &Polynomial<F>, b: &Polynomial<F>, c: &F::Elem) -> Result<()> {
        let field = self.ring.field.clone();
        let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        self.map.reserve(large.len());
        for (ma, ca) in &small.terms {
            let cac = field.mul(ca, c);
            for (mb, cb) in &large.terms {
                self.add_term(ma.checked_mul(mb)?, &field.mul(&cac, cb));
            }
        }
        Ok(())
    }

    pub fn finish(self) -> Polynomial<F> {
        let field = &self.ring.field;
        let order = self.ring.order;
        let mut terms: Vec<_> = self.map.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_unstable_by(|a, b| order.compare(&b.0, &a.0));
        Polynomial { ring: self.ring, terms }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{PrimeField, RationalField};

    fn ring() -> Arc<PolyRing<RationalField>> {
        PolyRing::new(RationalField, VariableLayout::from_names(&["x", "y", "z"]).unwrap(), MonomialOrder::DegRevLex)
    }

    #[test]
    fn arithmetic_and_division() {
        let r = ring();
        let f = r.parse("x^2-y*z+3").unwrap();
        let g = r.parse("x-2*z").unwrap();
        let h = &f * &g;
        assert_eq!(h.exact_div(&g).unwrap(), f);
        assert!(f.exact_div(&g).is_err());
        assert_eq!(&(&f + &g) - &g, f);
        assert!((&f - &f).is_zero());
    }

    #[test]
    fn derivative_and_evaluation() {
        let r = ring();
        let f = r.parse("x^3*y+2*y*z-z^2").unwrap();
        assert_eq!(f.derivative(0).unwrap().to_string(), "3*x^2*y");
        assert_eq!(f.derivative(2).unwrap().to_string(), "2*y-2*z");
        let v = |n: i64| RationalField.from_i64(n);
        assert_eq!(f.evaluate(&[v(1), v(2), v(3)]).unwrap(), v(2 + 12 - 9));
        assert!(matches!(f.evaluate(&[v(1)]), Err(Error::MissingAssignment(1))));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = ring().parse("x").unwrap();
        let other = PolyRing::new(PrimeField::new(7).unwrap(), VariableLayout::from_names(&["x"]).unwrap(), MonomialOrder::DegRevLex);
        let b = PolyRing::new(RationalField, VariableLayout::from_names(&["x"]).unwrap(), MonomialOrder::DegRevLex)
            .parse("x")
            .unwrap();
        assert!(matches!(a.checked_add(&b), Err(Error::RingMismatch)));
        assert_eq!(other.parse("x").unwrap().to_string(), "x");
    }

    #[test]
    fn substitute_into_point_block() {
        let src = PolyRing::new(RationalField, VariableLayout::source(&[1, 1]), MonomialOrder::DegRevLex);
        let dst = PolyRing::new(RationalField, VariableLayout::configuration(2, &[1, 1]), MonomialOrder::DegRevLex);
        let f = src.parse("x_0_0^2*x_1_1-x_0_1*x_1_0").unwrap();
        let g = f.substitute_block(&dst, 1).unwrap();
        assert_eq!(g.to_string(), "z_1_0_0^2*z_1_1_1-z_1_0_1*z_1_1_0");
        assert!(f.substitute_block(&dst, 2).is_err());
    }
}
