//! Exact arithmetic, polynomial ideals and Terracini loci.
//!
//! The crate is layered bottom-up:
//!
//! * [`fields`]: the rationals and prime fields behind a common [`fields::Field`] trait.
//! * [`poly`]: sparse multivariate polynomials over block-structured variable layouts.
//! * [`linalg`]: exact rank, kernels and minors of scalar and polynomial matrices.
//! * [`groebner`]: Buchberger's algorithm, elimination, saturation and Krull dimension.
//! * [`varieties`]: parametrized and ideal-defined projective varieties.
//! * [`locus`]: stacked Jacobians, the Terracini ideal and the classification oracles.
//! * [`verify`]: named self-check suites used by the command-line tool.

pub mod error;
pub mod fields;
pub mod groebner;
pub mod linalg;
pub mod locus;
pub mod poly;
pub mod varieties;
pub mod verify;

pub use error::{Error, Result};
