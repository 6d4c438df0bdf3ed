//! Projective varieties: parametrized images of products of projective spaces and
//! varieties cut out by homogeneous ideals.

mod ideal;
mod param;
mod spec;

pub use ideal::IdealVariety;
pub use param::{monomial_exponents, Family, ParamMap, QPoly, QRing, RANK_TRIALS};
pub use spec::parse_variety_spec;

use crate::error::Result;

/// Either description of a variety.
#[derive(Clone, Debug)]
pub enum Variety {
    Param(ParamMap),
    Ideal(IdealVariety),
}

impl Variety {
    /// Dimension `N` of the ambient projective space.
    pub fn target_dim(&self) -> usize {
        match self {
            Variety::Param(p) => p.target_dim(),
            Variety::Ideal(x) => x.ambient_dim(),
        }
    }

    /// Dimension of the variety.
    pub fn dim(&self) -> usize {
        match self {
            Variety::Param(p) => p.generic_rank() - 1,
            Variety::Ideal(x) => x.dim(),
        }
    }

    /// Generic rank of the Jacobian matrix used in the rank conditions: `dim X + 1` for a
    /// parametrization and the codimension for an ideal.
    pub fn generic_rank(&self) -> usize {
        match self {
            Variety::Param(p) => p.generic_rank(),
            Variety::Ideal(x) => x.codim(),
        }
    }

    pub fn is_nondegenerate(&self) -> Result<bool> {
        match self {
            Variety::Param(p) => Ok(p.is_nondegenerate()),
            Variety::Ideal(x) => x.is_nondegenerate(),
        }
    }
}
