use crate::error::{Error, Result};
use crate::varieties::Family;

/// The smallest `r` with a nonempty Terracini locus, and for Segre-Veronese varieties the
/// 0-based factors `J` attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Threshold {
    pub r: usize,
    pub factors: Vec<usize>,
}

fn half_up(d: u32) -> usize {
    (d as usize + 2).div_ceil(2)
}

/// First nonempty Terracini locus of a Veronese or Segre-Veronese variety.
pub fn first_nonempty_r(family: &Family) -> Result<Threshold> {
    match family {
        Family::Veronese { d, .. } => Ok(Threshold { r: half_up(*d), factors: vec![0] }),
        Family::SegreVeronese { degrees, .. } => {
            if degrees.iter().filter(|&&d| d == 1).count() > 1 {
                return Err(Error::Unsupported(format!(
                    "degrees {degrees:?} have more than one factor of degree 1, which makes the variety defective"
                )));
            }
            let r = degrees.iter().map(|&d| half_up(d)).min().ok_or_else(|| Error::InvalidVariety("no factors".into()))?;
            let factors = (0..degrees.len()).filter(|&i| half_up(degrees[i]) == r).collect();
            Ok(Threshold { r, factors })
        }
        other => Err(Error::Unsupported(format!("no threshold formula for {other:?}"))),
    }
}

/// Which emptiness criterion for a smooth curve of genus `g` is applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveEmbedding {
    /// Embedded by a complete linear system in `P^N`.
    Complete { ambient: usize },
    /// Embedded in `P^n` by a subsystem of a complete system with `h0` sections.
    Subsystem { h0: usize, ambient: usize },
}

/// Whether the genus bounds certify `Ter_r(C) = ∅`.
pub fn curve_emptiness_bounds(genus: usize, embedding: CurveEmbedding, r: usize) -> bool {
    let (g, r) = (genus as i64, r as i64);
    match embedding {
        CurveEmbedding::Complete { ambient } => 2 * r < ambient as i64 - g + 2,
        CurveEmbedding::Subsystem { h0, ambient } => 2 * r < h0 as i64 - g + 1 && 3 * r < ambient as i64 + 2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thresholds() {
        assert_eq!(first_nonempty_r(&Family::Veronese { n: 2, d: 3 }).unwrap().r, 3);
        let sv = |d: Vec<u32>| first_nonempty_r(&Family::SegreVeronese { dims: vec![1; d.len()], degrees: d });
        assert_eq!(sv(vec![1, 3]).unwrap(), Threshold { r: 2, factors: vec![0] });
        assert_eq!(sv(vec![3, 3]).unwrap(), Threshold { r: 3, factors: vec![0, 1] });
        assert!(sv(vec![1, 1]).is_err());
    }

    #[test]
    fn curve_bounds() {
        for k in 2..10 {
            assert!(curve_emptiness_bounds(0, CurveEmbedding::Complete { ambient: 2 * k + 1 }, k));
        }
        for n in (4..12).step_by(2) {
            assert!(curve_emptiness_bounds(1, CurveEmbedding::Complete { ambient: n }, n / 2));
        }
        let octic = |r| curve_emptiness_bounds(0, CurveEmbedding::Subsystem { h0: 9, ambient: 7 }, r);
        assert!(octic(2));
        assert!(!octic(3));
    }
}
