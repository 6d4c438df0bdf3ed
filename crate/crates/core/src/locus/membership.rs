use std::fmt;

use crate::error::{Error, Result};
use crate::fields::RationalField;
use crate::linalg::Matrix;
use crate::varieties::{IdealVariety, ParamMap, Variety};

use super::config::PointConfig;

/// The inclusive range `2 ..= floor((N + 1) / (dim X + 1))` of point counts for which the
/// Terracini condition is meaningful. Empty when the upper end is below 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AdmissibleRange {
    pub lower: usize,
    pub upper: usize,
}

impl AdmissibleRange {
    pub fn is_empty(&self) -> bool {
        self.upper < self.lower
    }

    pub fn contains(&self, r: usize) -> bool {
        (self.lower..=self.upper).contains(&r)
    }

    pub fn check(&self, r: usize) -> Result<()> {
        if self.contains(r) {
            Ok(())
        } else {
            Err(Error::InadmissibleR { r, range: self.to_string() })
        }
    }
}

impl fmt::Display for AdmissibleRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "empty (upper bound {} < {})", self.upper, self.lower)
        } else {
            write!(f, "[{}, {}]", self.lower, self.upper)
        }
    }
}

/// Admissible point counts of a nondegenerate variety.
pub fn admissible_r_range(variety: &Variety) -> Result<AdmissibleRange> {
    if !variety.is_nondegenerate()? {
        return Err(Error::DegenerateVariety("the variety lies in a hyperplane".into()));
    }
    Ok(AdmissibleRange { lower: 2, upper: (variety.target_dim() + 1) / (variety.dim() + 1) })
}

/// Outcome of a rank test on a stacked Jacobian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankReport {
    pub rank: usize,
    /// The expected rank `min(r * l, columns)`; membership means `rank < threshold`.
    pub threshold: usize,
    pub rows: usize,
    pub cols: usize,
}

impl RankReport {
    pub fn is_member(&self) -> bool {
        self.rank < self.threshold
    }
}

/// Stacks the Jacobians of the map at every point of `config`, in point order. Fails with a
/// singular-point error when a single point has Jacobian rank below the generic rank.
pub fn stacked_jacobian(map: &ParamMap, config: &PointConfig) -> Result<Matrix<RationalField>> {
    config.check_dims(map.dims())?;
    let mut stacked: Option<Matrix<RationalField>> = None;
    for i in 0..config.r() {
        let j = map.jacobian_at(&config.flat(i))?;
        if j.rank() < map.generic_rank() {
            return Err(Error::SingularPoint(i));
        }
        stacked = Some(match stacked {
            None => j,
            Some(s) => s.stack(&j)?,
        });
    }
    Ok(stacked.expect("configurations are nonempty"))
}

/// Rank of the stacked Jacobian against `min(r * l, m + 1)`, without the range check.
pub fn rank_report(map: &ParamMap, config: &PointConfig) -> Result<RankReport> {
    let a = stacked_jacobian(map, config)?;
    Ok(RankReport {
        rank: a.rank(),
        threshold: (config.r() * map.generic_rank()).min(a.cols()),
        rows: a.rows(),
        cols: a.cols(),
    })
}

fn param_range(map: &ParamMap) -> Result<AdmissibleRange> {
    admissible_r_range(&Variety::Param(map.clone()))
}

/// Whether the image of `config` lies in the Terracini locus of the parametrized variety.
pub fn membership_param(map: &ParamMap, config: &PointConfig) -> Result<bool> {
    membership_param_report(map, config).map(|r| r.is_member())
}

/// [`membership_param`] with the rank details.
pub fn membership_param_report(map: &ParamMap, config: &PointConfig) -> Result<RankReport> {
    param_range(map)?.check(config.r())?;
    rank_report(map, config)
}

/// Transposed Jacobians of the generators at two points of `X`, stacked, with rank details.
pub fn membership_ideal_report(x: &IdealVariety, config: &PointConfig) -> Result<RankReport> {
    if config.r() != 2 {
        return Err(Error::Unsupported(format!("the ideal route needs r = 2, got r = {}", config.r())));
    }
    config.check_dims(&[x.ambient_dim()])?;
    let codim = x.codim();
    let mut blocks = Vec::new();
    for i in 0..2 {
        let point = config.flat(i);
        if !x.contains_point(&point)? {
            return Err(Error::PointNotOnVariety(i));
        }
        let j = x.jacobian_at(&point)?;
        if j.rank() < codim {
            return Err(Error::SingularPoint(i));
        }
        blocks.push(j);
    }
    let a = blocks[0].stack(&blocks[1])?;
    Ok(RankReport { rank: a.rank(), threshold: (2 * codim).min(a.cols()), rows: a.rows(), cols: a.cols() })
}

/// Whether a pair of smooth points of an ideal-defined variety lies in its 2-Terracini locus.
pub fn membership_ideal(x: &IdealVariety, config: &PointConfig) -> Result<bool> {
    membership_ideal_report(x, config).map(|r| r.is_member())
}

/// Dispatches on the variety description.
pub fn membership(variety: &Variety, config: &PointConfig) -> Result<RankReport> {
    match variety {
        Variety::Param(map) => membership_param_report(map, config),
        Variety::Ideal(x) => {
            admissible_r_range(variety)?.check(config.r())?;
            membership_ideal_report(x, config)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cubic() -> ParamMap {
        ParamMap::veronese(1, 3).unwrap()
    }

    #[test]
    fn ranges() {
        let r = admissible_r_range(&Variety::Param(cubic())).unwrap();
        assert_eq!((r.lower, r.upper), (2, 2));
        let v = admissible_r_range(&Variety::Param(ParamMap::veronese(2, 3).unwrap())).unwrap();
        assert_eq!((v.lower, v.upper), (2, 3));
        let q = IdealVariety::from_text(3, &["x_0_0*x_0_1-x_0_2*x_0_3".into()]).unwrap();
        let q = admissible_r_range(&Variety::Ideal(q)).unwrap();
        assert!(q.is_empty());
        assert!(q.check(2).is_err());
    }

    #[test]
    fn single_point_rank() {
        let conic = ParamMap::veronese(1, 2).unwrap();
        let c = PointConfig::from_integers(&[vec![1, 0]]).unwrap();
        assert_eq!(stacked_jacobian(&conic, &c).unwrap().rank(), 2);
        assert!(!rank_report(&conic, &c).unwrap().is_member());
    }

    #[test]
    fn veronese_examples() {
        let v = ParamMap::veronese(2, 3).unwrap();
        let collinear = PointConfig::from_integers(&[vec![1, 0, 0], vec![1, 1, 0], vec![1, 2, 0]]).unwrap();
        assert!(membership_param(&v, &collinear).unwrap());
        let frame = PointConfig::from_integers(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert!(!membership_param(&v, &frame).unwrap());
        let two = PointConfig::from_integers(&[vec![1, 0], vec![1, 1]]).unwrap();
        assert!(!membership_param(&cubic(), &two).unwrap());
    }

    #[test]
    fn preconditions() {
        let v = ParamMap::veronese(2, 3).unwrap();
        let four = PointConfig::from_integers(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1]]).unwrap();
        assert!(matches!(membership_param(&v, &four), Err(Error::InadmissibleR { r: 4, .. })));
        let wrong = PointConfig::from_integers(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert!(matches!(membership_param(&v, &wrong), Err(Error::InvalidConfiguration(_))));
        let dp = ParamMap::del_pezzo(1).unwrap();
        let base = PointConfig::from_integers(&[vec![0, 0, 1], vec![1, 2, 3]]).unwrap();
        assert!(matches!(membership_param(&dp, &base), Err(Error::SingularPoint(0))));
    }

    #[test]
    fn twisted_cubic_ideal_route() {
        let x = IdealVariety::from_text(
            3,
            &["x_0_1^2-x_0_0*x_0_2".into(), "x_0_1*x_0_2-x_0_0*x_0_3".into(), "x_0_2^2-x_0_1*x_0_3".into()],
        )
        .unwrap();
        let pair = PointConfig::from_integers(&[vec![1, 1, 1, 1], vec![1, 2, 4, 8]]).unwrap();
        assert!(!membership_ideal(&x, &pair).unwrap());
        let off = PointConfig::from_integers(&[vec![1, 1, 1, 1], vec![1, 2, 4, 9]]).unwrap();
        assert!(matches!(membership_ideal(&x, &off), Err(Error::PointNotOnVariety(1))));
        let three = PointConfig::from_integers(&[vec![1, 0, 0, 0], vec![1, 1, 1, 1], vec![1, 2, 4, 8]]).unwrap();
        assert!(matches!(membership_ideal(&x, &three), Err(Error::Unsupported(_))));
    }
}
