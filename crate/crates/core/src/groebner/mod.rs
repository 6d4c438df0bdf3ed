//! Groebner bases and the ideal operations built on them.
//!
//! The default coefficient field for these computations is `Z/32003`; see
//! [`crate::fields::DEFAULT_PRIME`].

mod dimension;
mod engine;
mod ideal;

pub use dimension::dimension_from_leading_monomials;
pub use engine::GbStats;
pub use ideal::{
    buchberger, eliminate, ideal_intersection, krull_dimension, normal_form, random_combination, saturate,
    saturate_by_ideal, saturate_many, saturate_rabinowitsch, verify_basis, GbOptions, GroebnerBasis, Ideal, SaturationStrategy,
};

#[cfg(test)]
mod tests;
