//! Exact linear algebra over fields and polynomial rings.

mod matrix;
mod minors;

pub use matrix::Matrix;
pub use minors::{
    combinations, determinant_bareiss, determinant_laplace, k_minors, k_minors_with, MinorSet, MinorStrategy, PolyMatrix,
};
