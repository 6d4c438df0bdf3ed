//! Buchberger's algorithm on raw term vectors.
//!
//! Polynomials are `Vec<(Monomial, coefficient)>` sorted strictly descending. Reduction
//! uses geobuckets; pairs are pruned with the Gebauer-Moeller criteria and selected by
//! sugar degree, then lcm degree, then index. Input generators are queued like pairs and
//! only enter the basis once reduced.

use std::cmp::Ordering;

use crate::error::Result;
use crate::fields::Field;
use crate::poly::{Monomial, MonomialOrder};

pub(crate) type Term<F> = (Monomial, <F as Field>::Elem);
pub(crate) type Terms<F> = Vec<Term<F>>;

/// Sum of term vectors kept in buckets of geometrically growing size. Buckets are stored in
/// ascending order so the leading term of each bucket is at the end.
struct GeoBucket<F: Field> {
    buckets: Vec<Terms<F>>,
}

fn bucket_capacity(i: usize) -> usize {
    8usize << (2 * i)
}

fn merge_ascending<F: Field>(field: &F, order: &MonomialOrder, a: Terms<F>, b: Terms<F>) -> Terms<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut a = a.into_iter().peekable();
    let mut b = b.into_iter().peekable();
    loop {
        let ord = match (a.peek(), b.peek()) {
            (Some(x), Some(y)) => order.compare(&x.0, &y.0),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => break,
        };
        match ord {
            Ordering::Less => out.push(a.next().unwrap()),
            Ordering::Greater => out.push(b.next().unwrap()),
            Ordering::Equal => {
                let (m, mut c) = a.next().unwrap();
                let (_, d) = b.next().unwrap();
                field.add_assign(&mut c, &d);
                if !field.is_zero(&c) {
                    out.push((m, c));
                }
            }
        }
    }
    out
}

impl<F: Field> GeoBucket<F> {
    fn new() -> Self {
        GeoBucket { buckets: Vec::new() }
    }

    fn add(&mut self, field: &F, order: &MonomialOrder, mut p: Terms<F>) {
        if p.is_empty() {
            return;
        }
        let mut i = 0;
        while bucket_capacity(i) < p.len() {
            i += 1;
        }
        loop {
            if self.buckets.len() <= i {
                self.buckets.resize_with(i + 1, Vec::new);
            }
            if self.buckets[i].is_empty() {
                self.buckets[i] = p;
                return;
            }
            let existing = std::mem::take(&mut self.buckets[i]);
            p = merge_ascending(field, order, existing, p);
            if p.len() <= bucket_capacity(i) {
                self.buckets[i] = p;
                return;
            }
            i += 1;
        }
    }

    fn pop_leading(&mut self, field: &F, order: &MonomialOrder) -> Option<Term<F>> {
        loop {
            let mut best: Option<usize> = None;
            for (i, b) in self.buckets.iter().enumerate() {
                if let Some(t) = b.last() {
                    best = match best {
                        Some(j) if order.compare(&self.buckets[j].last().unwrap().0, &t.0) != Ordering::Less => Some(j),
                        _ => Some(i),
                    };
                }
            }
            let j = best?;
            let (m, mut c) = self.buckets[j].pop().unwrap();
            for i in 0..self.buckets.len() {
                if i != j && self.buckets[i].last().is_some_and(|t| t.0 == m) {
                    let (_, d) = self.buckets[i].pop().unwrap();
                    field.add_assign(&mut c, &d);
                }
            }
            if !field.is_zero(&c) {
                return Some((m, c));
            }
        }
    }
}

/// Monic polynomials with cached leading-monomial masks, used as reducers.
pub(crate) struct Reducers<F: Field> {
    pub polys: Vec<Terms<F>>,
    masks: Vec<u64>,
    pub active: Vec<bool>,
}

impl<F: Field> Reducers<F> {
    pub fn new() -> Self {
        Reducers { polys: Vec::new(), masks: Vec::new(), active: Vec::new() }
    }

    /// Adds a monic polynomial and returns its index.
    pub fn push(&mut self, p: Terms<F>) -> usize {
        self.masks.push(p[0].0.divmask());
        self.polys.push(p);
        self.active.push(true);
        self.polys.len() - 1
    }

    pub fn lm(&self, i: usize) -> &Monomial {
        &self.polys[i][0].0
    }

    /// The shortest active reducer whose leading monomial divides `m`, skipping `skip`.
    fn find(&self, m: &Monomial, skip: Option<usize>) -> Option<usize> {
        let mask = m.divmask();
        let mut best: Option<usize> = None;
        for (i, p) in self.polys.iter().enumerate() {
            if !self.active[i] || Some(i) == skip || self.masks[i] & !mask != 0 || !p[0].0.divides(m) {
                continue;
            }
            if best.is_none_or(|b| self.polys[b].len() > p.len()) {
                best = Some(i);
            }
        }
        best
    }
}

/// Fully reduces `p` (given as a sum of scaled shifted term vectors in `bucket`).
fn reduce_bucket<F: Field>(
    field: &F,
    order: &MonomialOrder,
    reducers: &Reducers<F>,
    mut bucket: GeoBucket<F>,
    skip: Option<usize>,
) -> Result<Terms<F>> {
    let mut out = Vec::new();
    while let Some((m, c)) = bucket.pop_leading(field, order) {
        match reducers.find(&m, skip) {
            Some(g) => {
                let g = &reducers.polys[g];
                let q = m.checked_div(&g[0].0).expect("reducer divides");
                let neg = field.neg(&c);
                let mut shifted = Vec::with_capacity(g.len() - 1);
                for (gm, gc) in g[1..].iter().rev() {
                    shifted.push((gm.checked_mul(&q)?, field.mul(gc, &neg)));
                }
                bucket.add(field, order, shifted);
            }
            None => out.push((m, c)),
        }
    }
    Ok(out)
}

/// Full normal form of `p` with respect to the active reducers.
pub(crate) fn normal_form<F: Field>(
    field: &F,
    order: &MonomialOrder,
    reducers: &Reducers<F>,
    p: &[Term<F>],
    skip: Option<usize>,
) -> Result<Terms<F>> {
    let mut bucket = GeoBucket::new();
    bucket.add(field, order, p.iter().rev().cloned().collect());
    reduce_bucket(field, order, reducers, bucket, skip)
}

pub(crate) fn make_monic<F: Field>(field: &F, p: &mut Terms<F>) {
    if let Some((_, lc)) = p.first() {
        if !field.is_one(lc) {
            let inv = field.inv(lc).expect("nonzero leading coefficient");
            for t in p.iter_mut() {
                t.1 = field.mul(&t.1, &inv);
            }
        }
    }
}

#[derive(Clone, Debug)]
enum Job {
    Generator(usize),
    Pair(usize, usize),
}

#[derive(Clone, Debug)]
struct QueueItem {
    sugar: u32,
    degree: u32,
    job: Job,
    lcm: Option<Monomial>,
}

impl QueueItem {
    fn key(&self) -> (u32, u32, usize, usize) {
        match self.job {
            Job::Pair(i, j) => (self.sugar, self.degree, i, j),
            Job::Generator(g) => (self.sugar, self.degree, usize::MAX, g),
        }
    }
}

/// Statistics of one run.
#[derive(Clone, Debug, Default)]
pub struct GbStats {
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub basis_size: usize,
}

pub(crate) struct Engine<'a, F: Field> {
    field: &'a F,
    order: MonomialOrder,
    reducers: Reducers<F>,
    sugar: Vec<u32>,
    queue: Vec<QueueItem>,
    pub stats: GbStats,
}

fn sugar_of<F: Field>(order: &MonomialOrder, p: &Terms<F>) -> u32 {
    p.iter().map(|t| order.degree(&t.0)).max().unwrap_or(0)
}

impl<'a, F: Field> Engine<'a, F> {
    pub fn new(field: &'a F, order: MonomialOrder) -> Self {
        Engine { field, order, reducers: Reducers::new(), sugar: Vec::new(), queue: Vec::new(), stats: GbStats::default() }
    }

    /// Reduced Groebner basis of the given generators, sorted by descending leading monomial.
    pub fn run(mut self, gens: Vec<Terms<F>>) -> Result<(Vec<Terms<F>>, GbStats)> {
        let gens = self.echelon(gens);
        for (g, p) in gens.iter().enumerate() {
            let s = sugar_of::<F>(&self.order, p);
            self.queue.push(QueueItem { sugar: s, degree: self.order.degree(&p[0].0), job: Job::Generator(g), lcm: None });
        }
        self.sort_queue();
        while let Some(item) = self.queue.pop() {
            let (bucket, sugar) = match item.job {
                Job::Generator(g) => {
                    let mut b = GeoBucket::new();
                    b.add(self.field, &self.order, gens[g].iter().rev().cloned().collect());
                    (b, item.sugar)
                }
                Job::Pair(i, j) => (self.s_poly(i, j, item.lcm.as_ref().unwrap())?, item.sugar),
            };
            self.stats.pairs_reduced += 1;
            let mut h = reduce_bucket(self.field, &self.order, &self.reducers, bucket, None)?;
            if h.is_empty() {
                self.stats.zero_reductions += 1;
                continue;
            }
            make_monic(self.field, &mut h);
            let sugar = sugar.max(sugar_of::<F>(&self.order, &h));
            if h[0].0.is_one() {
                let one = vec![h.swap_remove(0)];
                return Ok((vec![one], self.stats));
            }
            self.update(h, sugar);
        }
        let basis = self.reduce_final()?;
        self.stats.basis_size = basis.len();
        Ok((basis, self.stats))
    }

    /// Row echelon form on leading monomials: the survivors have distinct leading monomials.
    fn echelon(&self, gens: Vec<Terms<F>>) -> Vec<Terms<F>> {
        let field = self.field;
        let order = &self.order;
        let mut gens: Vec<Terms<F>> = gens.into_iter().filter(|p| !p.is_empty()).collect();
        gens.sort_by(|a, b| order.compare(&b[0].0, &a[0].0).then(a.len().cmp(&b.len())));
        let mut pivots: rustc_hash::FxHashMap<Monomial, usize> = Default::default();
        let mut out: Vec<Terms<F>> = Vec::new();
        for mut p in gens {
            loop {
                if p.is_empty() {
                    break;
                }
                match pivots.get(&p[0].0) {
                    Some(&k) => {
                        let c = field.neg(&p[0].1);
                        let q: Terms<F> = out[k].iter().rev().map(|(m, a)| (m.clone(), field.mul(a, &c))).collect();
                        let rev: Terms<F> = p.into_iter().rev().collect();
                        p = merge_ascending(field, order, rev, q).into_iter().rev().collect();
                    }
                    None => {
                        make_monic(field, &mut p);
                        pivots.insert(p[0].0.clone(), out.len());
                        out.push(p);
                        break;
                    }
                }
            }
        }
        out
    }

    fn s_poly(&self, i: usize, j: usize, lcm: &Monomial) -> Result<GeoBucket<F>> {
        let mut bucket = GeoBucket::new();
        let field = self.field;
        for (k, sign) in [(i, field.one()), (j, field.neg(&field.one()))] {
            let p = &self.reducers.polys[k];
            let q = lcm.checked_div(&p[0].0).expect("lcm is a multiple");
            let mut shifted = Vec::with_capacity(p.len() - 1);
            for (m, c) in p[1..].iter().rev() {
                shifted.push((m.checked_mul(&q)?, field.mul(c, &sign)));
            }
            bucket.add(field, &self.order, shifted);
        }
        Ok(bucket)
    }

    fn sort_queue(&mut self) {
        // Descending so the smallest key is popped first.
        self.queue.sort_by(|a, b| b.key().cmp(&a.key()));
    }

    /// Gebauer-Moeller update after adding `h`.
    fn update(&mut self, h: Terms<F>, sugar: u32) {
        let lm_h = h[0].0.clone();
        let hi = self.reducers.push(h);
        self.sugar.push(sugar);

        // New pairs (g, h) for active g.
        let mut cands: Vec<(usize, Monomial, bool)> = Vec::new();
        for g in 0..hi {
            if !self.reducers.active[g] {
                continue;
            }
            let lm_g = self.reducers.lm(g);
            cands.push((g, lm_g.lcm(&lm_h), lm_g.is_coprime(&lm_h)));
        }
        let mut keep = vec![false; cands.len()];
        let mut dropped = vec![false; cands.len()];
        for a in 0..cands.len() {
            let (_, ref la, coprime) = cands[a];
            if coprime {
                keep[a] = true;
                continue;
            }
            // Drop if another surviving (unprocessed or kept) candidate's lcm divides this one.
            let dominated = (0..cands.len()).any(|b| {
                b != a && !dropped[b] && (b > a || keep[b]) && cands[b].1.divides(la)
            });
            if dominated {
                dropped[a] = true;
            } else {
                keep[a] = true;
            }
        }
        // Old pairs whose lcm is divisible by lm(h) in a strict way are redundant.
        let reducers = &self.reducers;
        self.queue.retain(|item| match item.job {
            Job::Generator(_) => true,
            Job::Pair(i, j) => {
                let l = item.lcm.as_ref().unwrap();
                !(lm_h.divides(l) && reducers.lm(i).lcm(&lm_h) != *l && reducers.lm(j).lcm(&lm_h) != *l)
            }
        });
        for (a, (g, lcm, coprime)) in cands.into_iter().enumerate() {
            if !keep[a] || coprime {
                continue;
            }
            let lm_g = self.reducers.lm(g);
            let o = &self.order;
            let s = (o.degree(&lcm) - o.degree(lm_g) + self.sugar[g]).max(o.degree(&lcm) - o.degree(&lm_h) + sugar);
            self.queue.push(QueueItem { sugar: s, degree: o.degree(&lcm), job: Job::Pair(g, hi), lcm: Some(lcm) });
        }
        for g in 0..hi {
            if self.reducers.active[g] && lm_h.divides(self.reducers.lm(g)) {
                self.reducers.active[g] = false;
            }
        }
        self.sort_queue();
    }

    /// Interreduces the active elements into the reduced basis.
    fn reduce_final(&self) -> Result<Vec<Terms<F>>> {
        let active: Vec<usize> = (0..self.reducers.polys.len()).filter(|&i| self.reducers.active[i]).collect();
        let mut out = Vec::with_capacity(active.len());
        for &i in &active {
            let p = &self.reducers.polys[i];
            let mut tail = normal_form(self.field, &self.order, &self.reducers, &p[1..], Some(i))?;
            let mut q = vec![p[0].clone()];
            q.append(&mut tail);
            out.push(q);
        }
        out.sort_by(|a, b| self.order.compare(&b[0].0, &a[0].0));
        Ok(out)
    }
}
