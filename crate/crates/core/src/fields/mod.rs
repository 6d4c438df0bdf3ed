//! Exact coefficient fields.
//!
//! Two concrete fields implement [`Field`]: [`RationalField`] (arbitrary precision
//! rationals) and [`PrimeField`] (residues modulo a word-sized prime). Generic code is
//! monomorphized over the trait; [`FieldSpec`] selects a field at run time and
//! [`FieldScalar`] is a tagged element for code that mixes fields dynamically.

mod prime;
mod rational;

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};

pub use prime::{is_prime, PrimeField, Residue};
pub use rational::{rat_normalize, Rational, RationalField};

/// Default modulus for Groebner computations.
pub const DEFAULT_PRIME: u64 = 32003;

/// An exact field whose elements are plain values manipulated through the field object.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; fails on zero.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        if self.is_zero(b) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    /// `a -= b * c`.
    fn sub_mul_assign(&self, a: &mut Self::Elem, b: &Self::Elem, c: &Self::Elem) {
        *a = self.sub(a, &self.mul(b, c));
    }

    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Image of a rational number; fails when the denominator is not invertible.
    fn from_rational(&self, q: &Rational) -> Result<Self::Elem>;

    /// Canonical decimal text of an element.
    fn format(&self, a: &Self::Elem) -> String;
    /// Sign and magnitude text, used when printing polynomials.
    fn format_signed(&self, a: &Self::Elem) -> (bool, String) {
        (false, self.format(a))
    }
    fn parse(&self, s: &str) -> Result<Self::Elem>;

    /// A uniformly random element (bounded small integers for the rationals).
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    /// A random nonzero element.
    fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        loop {
            let a = self.random(rng);
            if !self.is_zero(&a) {
                return a;
            }
        }
    }

    fn spec(&self) -> FieldSpec;
}

/// Run-time choice of coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Prime(DEFAULT_PRIME)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rationals);
        }
        let p = s
            .strip_prefix("fp:")
            .ok_or_else(|| Error::parse(format!("unknown field `{s}`, expected `q` or `fp:<prime>`")))?;
        let p: u64 = p.parse().map_err(|_| Error::parse(format!("bad modulus `{p}`")))?;
        PrimeField::new(p)?;
        Ok(FieldSpec::Prime(p))
    }
}

/// Evaluates `$body` with `$f` bound to the concrete field named by `$spec`.
///
/// The enclosing function must return a `Result` whose error converts from [`Error`].
#[macro_export]
macro_rules! with_field {
    ($spec:expr, |$f:ident| $body:expr) => {
        match $spec {
            $crate::fields::FieldSpec::Rationals => {
                let $f = $crate::fields::RationalField;
                $body
            }
            $crate::fields::FieldSpec::Prime(p) => {
                let $f = $crate::fields::PrimeField::new(p)?;
                $body
            }
        }
    };
}

/// A field element tagged with its field, for dynamically typed arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldScalar {
    Rational(Rational),
    Residue(Residue),
}

impl FieldScalar {
    pub fn spec(&self) -> FieldSpec {
        match self {
            FieldScalar::Rational(_) => FieldSpec::Rationals,
            FieldScalar::Residue(r) => FieldSpec::Prime(r.modulus()),
        }
    }

    fn binary(
        &self,
        other: &Self,
        q: impl Fn(&Rational, &Rational) -> Result<Rational>,
        fp: impl Fn(&PrimeField, u64, u64) -> Result<u64>,
    ) -> Result<Self> {
        match (self, other) {
            (FieldScalar::Rational(a), FieldScalar::Rational(b)) => Ok(FieldScalar::Rational(q(a, b)?)),
            (FieldScalar::Residue(a), FieldScalar::Residue(b)) if a.modulus() == b.modulus() => {
                let field = PrimeField::new(a.modulus())?;
                Ok(FieldScalar::Residue(field.residue(fp(&field, a.value(), b.value())?)))
            }
            _ => Err(Error::IncompatibleFields(self.spec().to_string(), other.spec().to_string())),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.binary(other, |a, b| Ok(RationalField.add(a, b)), |f, a, b| Ok(f.add(&a, &b)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.binary(other, |a, b| Ok(RationalField.sub(a, b)), |f, a, b| Ok(f.sub(&a, &b)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.binary(other, |a, b| Ok(RationalField.mul(a, b)), |f, a, b| Ok(f.mul(&a, &b)))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.binary(other, |a, b| RationalField.div(a, b), |f, a, b| f.div(&a, &b))
    }

    pub fn inv(&self) -> Result<Self> {
        match self {
            FieldScalar::Rational(a) => Ok(FieldScalar::Rational(RationalField.inv(a)?)),
            FieldScalar::Residue(a) => {
                let field = PrimeField::new(a.modulus())?;
                Ok(FieldScalar::Residue(field.residue(field.inv(&a.value())?)))
            }
        }
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldScalar::Rational(a) => write!(f, "{a}"),
            FieldScalar::Residue(a) => write!(f, "{a}"),
        }
    }
}
