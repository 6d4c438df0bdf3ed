//! Sparse multivariate polynomials over block-structured variable layouts.

mod layout;
mod monomial;
mod polynomial;
mod text;

pub use layout::{Block, VariableLayout};
pub use monomial::{Monomial, MonomialOrder};
pub use polynomial::{PolyAccumulator, PolyRing, Polynomial};
