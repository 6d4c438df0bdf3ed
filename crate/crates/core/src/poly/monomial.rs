use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub(crate) type Exponents = SmallVec<[u16; 20]>;

/// A power product stored as a dense exponent vector with its cached total degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    degree: u32,
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

impl Monomial {
    pub fn new(exps: &[u16]) -> Self {
        Monomial { degree: exps.iter().map(|&e| e as u32).sum(), exps: SmallVec::from_slice(exps) }
    }

    pub(crate) fn from_exps(exps: Exponents) -> Self {
        Monomial { degree: exps.iter().map(|&e| e as u32).sum(), exps }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, nvars), degree: 0 }
    }

    /// The monomial `x_i^e`.
    pub fn var(nvars: usize, i: usize, e: u16) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = e;
        m.degree = e as u32;
        m
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        if self.exps.len() != other.exps.len() {
            return Err(Error::LayoutMismatch);
        }
        let mut exps = Exponents::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_add(*b).ok_or(Error::ExponentOverflow)?);
        }
        Ok(Monomial { exps, degree: self.degree + other.degree })
    }

    /// Whether `self` divides `other`.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let exps: Exponents = self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect();
        Some(Monomial { exps, degree: self.degree - other.degree })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Self::from_exps(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Self::from_exps(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bit `i` set iff variable `i mod 64` occurs; a cheap necessary test for divisibility.
    #[inline]
    pub fn divmask(&self) -> u64 {
        let mut mask = 0u64;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                mask |= 1 << (i % 64);
            }
        }
        mask
    }

    /// Sum of exponents over the variable range.
    pub fn partial_degree(&self, range: std::ops::Range<usize>) -> u32 {
        self.exps[range].iter().map(|&e| e as u32).sum()
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }
}

/// Monomial orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic order.
    DegRevLex,
    /// Block order: the variables from index `main` onwards dominate, degrevlex within
    /// each of the two blocks.
    Elimination { main: usize },
    /// Graded reverse lexicographic order where the last variable has degree `weight` and
    /// every other variable degree 1.
    WeightedLast { weight: u32 },
}

#[inline]
fn revlex(a: &[u16], b: &[u16]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

#[inline]
fn block_degrevlex(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| revlex(a, b))
}

impl MonomialOrder {
    #[inline]
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::DegRevLex => a.degree.cmp(&b.degree).then_with(|| revlex(&a.exps, &b.exps)),
            MonomialOrder::Elimination { main } => block_degrevlex(&a.exps[main..], &b.exps[main..])
                .then_with(|| block_degrevlex(&a.exps[..main], &b.exps[..main])),
            MonomialOrder::WeightedLast { .. } => {
                self.degree(a).cmp(&self.degree(b)).then_with(|| revlex(&a.exps, &b.exps))
            }
        }
    }

    /// The grading the order refines: total degree, or the weighted degree.
    #[inline]
    pub fn degree(&self, m: &Monomial) -> u32 {
        match *self {
            MonomialOrder::WeightedLast { weight } => {
                m.degree + (weight - 1) * m.exps.last().map_or(0, |&e| e as u32)
            }
            _ => m.degree,
        }
    }

    /// Like [`compare`](Self::compare) but rejects monomials of different lengths.
    pub fn try_compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != b.nvars() {
            return Err(Error::LayoutMismatch);
        }
        if let MonomialOrder::Elimination { main } = *self {
            if main > a.nvars() {
                return Err(Error::LayoutMismatch);
            }
        }
        Ok(self.compare(a, b))
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::DegRevLex => "degrevlex",
            MonomialOrder::Elimination { .. } => "elimination",
            MonomialOrder::WeightedLast { .. } => "weighted-degrevlex",
        }
    }
}
