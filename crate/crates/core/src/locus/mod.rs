//! Terracini loci: rank tests on stacked Jacobians, the determinantal ideal of special
//! configurations, its dimension, threshold formulas and special configuration families.

mod config;
mod ideal;
mod membership;
mod oracles;
mod thresholds;

pub use config::PointConfig;
pub use ideal::{
    generators_text, locus_dimension, terracini_ideal, Exactness, LocusDimension, Mode, Route, TerraciniIdeal,
    TerraciniOptions, TerraciniReport,
};
pub use membership::{
    admissible_r_range, membership, membership_ideal, membership_ideal_report, membership_param,
    membership_param_report, rank_report, stacked_jacobian, AdmissibleRange, RankReport,
};
pub use oracles::{oracle_config, random_smooth_point, sv_two_point_expected};
pub use thresholds::{curve_emptiness_bounds, first_nonempty_r, CurveEmbedding, Threshold};
