use crate::error::{Error, Result};
use crate::fields::{Field, PrimeField, Rational, RationalField, DEFAULT_PRIME};
use crate::groebner::Ideal;
use crate::linalg::Matrix;
use crate::poly::{MonomialOrder, PolyRing, VariableLayout};

use super::param::{QPoly, QRing};

/// A projective variety `V(I) ⊂ P^n` given by homogeneous generators over the rationals.
#[derive(Clone, Debug)]
pub struct IdealVariety {
    n: usize,
    ring: QRing,
    generators: Vec<QPoly>,
    codim: usize,
    jacobian: Vec<Vec<QPoly>>,
}

impl IdealVariety {
    /// The ambient ring `Q[x_0_0, ..., x_0_n]`.
    pub fn ambient_ring(n: usize) -> QRing {
        PolyRing::new(RationalField, VariableLayout::source(&[n]), MonomialOrder::DegRevLex)
    }

    /// Builds the variety from generators written in the variables `x_0_0 .. x_0_n`.
    pub fn from_text(n: usize, generators: &[String]) -> Result<Self> {
        let ring = Self::ambient_ring(n);
        let gens = generators.iter().map(|g| ring.parse(g)).collect::<Result<Vec<_>>>()?;
        Self::new(n, gens)
    }

    /// Validates homogeneity and computes the codimension from the Krull dimension of the
    /// ideal, evaluated over `Z/32003`.
    pub fn new(n: usize, generators: Vec<QPoly>) -> Result<Self> {
        if generators.iter().all(QPoly::is_zero) {
            return Err(Error::EmptyIdeal);
        }
        let ring = generators[0].ring().clone();
        if ring.nvars() != n + 1 {
            return Err(Error::LayoutMismatch);
        }
        for (i, g) in generators.iter().enumerate() {
            if !g.is_homogeneous() {
                return Err(Error::InhomogeneousGenerator(i));
            }
        }
        let fp = PrimeField::new(DEFAULT_PRIME)?;
        let ring_p = PolyRing::new(fp, ring.layout().as_ref().clone(), MonomialOrder::DegRevLex);
        let gens_p = generators.iter().map(|g| g.map_coefficients(&ring_p, |c| fp.from_rational(c))).collect::<Result<Vec<_>>>()?;
        let krull = Ideal::new(&ring_p, gens_p)?.krull_dimension()?;
        if krull <= 0 {
            return Err(Error::InvalidVariety("the ideal defines the empty projective set".into()));
        }
        let codim = n + 1 - krull as usize;
        let jacobian = generators
            .iter()
            .map(|g| (0..=n).map(|v| g.derivative(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(IdealVariety { n, ring, generators, codim, jacobian })
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &QRing {
        &self.ring
    }

    pub fn generators(&self) -> &[QPoly] {
        &self.generators
    }

    /// Codimension of the variety, equal to the Jacobian rank at smooth points.
    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn dim(&self) -> usize {
        self.n - self.codim
    }

    /// Transposed Jacobian: one row per generator, one column per variable.
    pub fn jacobian(&self) -> &[Vec<QPoly>] {
        &self.jacobian
    }

    pub fn jacobian_at(&self, point: &[Rational]) -> Result<Matrix<RationalField>> {
        let rows = self
            .jacobian
            .iter()
            .map(|row| row.iter().map(|p| p.evaluate(point)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(RationalField, rows)
    }

    pub fn contains_point(&self, point: &[Rational]) -> Result<bool> {
        for g in &self.generators {
            if !g.evaluate(point)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether the ideal contains no linear form.
    pub fn is_nondegenerate(&self) -> Result<bool> {
        let fp = PrimeField::new(DEFAULT_PRIME)?;
        let ring_p = PolyRing::new(fp, self.ring.layout().as_ref().clone(), MonomialOrder::DegRevLex);
        let gens = self.generators.iter().map(|g| g.map_coefficients(&ring_p, |c| fp.from_rational(c))).collect::<Result<Vec<_>>>()?;
        let ideal = Ideal::new(&ring_p, gens)?;
        let gb = ideal.groebner(&Default::default())?;
        Ok(!gb.polys().iter().any(|p| p.total_degree() == Some(1)))
    }
}
