use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fields::{Rational, RationalField};
use crate::linalg::Matrix;
use crate::poly::{Monomial, MonomialOrder, PolyRing, Polynomial, VariableLayout};

pub type QRing = Arc<PolyRing<RationalField>>;
pub type QPoly = Polynomial<RationalField>;

/// Which construction produced a parametrization. Used by the classification oracles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Veronese { n: usize, d: u32 },
    SegreVeronese { dims: Vec<usize>, degrees: Vec<u32> },
    RationalCurve { d: u32 },
    DelPezzo { t: usize },
}

/// A map from a product of projective spaces given by multihomogeneous forms of one
/// multidegree, together with its Jacobian and generic Jacobian rank.
#[derive(Clone, Debug)]
pub struct ParamMap {
    family: Family,
    dims: Vec<usize>,
    degrees: Vec<u32>,
    ring: QRing,
    components: Vec<QPoly>,
    jacobian: Vec<Vec<QPoly>>,
    generic_rank: usize,
}

/// Default number of random points used to determine the generic Jacobian rank.
pub const RANK_TRIALS: usize = 3;
const RANK_SEED: u64 = 0x5eed;

/// All exponent vectors of `n + 1` variables and total degree `d`, lexicographically
/// descending (`x_0^d` first).
pub fn monomial_exponents(n: usize, d: u32) -> Vec<Vec<u16>> {
    fn rec(vars: usize, d: u16, prefix: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if vars == 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(vars - 1, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n + 1, d as u16, &mut Vec::new(), &mut out);
    out
}

impl ParamMap {
    fn build(family: Family, dims: Vec<usize>, degrees: Vec<u32>, components: Vec<QPoly>, ring: QRing) -> Result<Self> {
        let jacobian = (0..ring.nvars())
            .map(|v| components.iter().map(|f| f.derivative(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let mut map = ParamMap { family, dims, degrees, ring, components, jacobian, generic_rank: 0 };
        map.generic_rank = map.validate_generic_rank(RANK_TRIALS, RANK_SEED)?;
        Ok(map)
    }

    fn source_ring(dims: &[usize]) -> QRing {
        PolyRing::new(RationalField, VariableLayout::source(dims), MonomialOrder::DegRevLex)
    }

    /// The degree-`d` Veronese embedding of `P^n`.
    pub fn veronese(n: usize, d: u32) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(Error::InvalidVariety(format!("veronese needs n >= 1 and d >= 1, got n = {n}, d = {d}")));
        }
        let ring = Self::source_ring(&[n]);
        let components =
            monomial_exponents(n, d).into_iter().map(|e| ring.monomial(Monomial::new(&e), Rational::one())).collect();
        let map = Self::build(Family::Veronese { n, d }, vec![n], vec![d], components, ring)?;
        map.expect_rank(n + 1)?;
        Ok(map)
    }

    /// The Segre-Veronese embedding of `P^{n_1} x ... x P^{n_k}` by forms of multidegree `d`.
    pub fn segre_veronese(dims: &[usize], degrees: &[u32]) -> Result<Self> {
        if dims.len() != degrees.len() || dims.is_empty() {
            return Err(Error::DimensionMismatch(format!("{} dimensions and {} degrees", dims.len(), degrees.len())));
        }
        if dims.iter().any(|&n| n == 0) || degrees.iter().any(|&d| d == 0) {
            return Err(Error::InvalidVariety("segre-veronese needs positive dimensions and degrees".into()));
        }
        let ring = Self::source_ring(dims);
        let nvars = ring.nvars();
        let mut components = vec![vec![0u16; nvars]];
        for (f, (&n, &d)) in dims.iter().zip(degrees).enumerate() {
            let offset = ring.layout().blocks()[f].range().start;
            let factor = monomial_exponents(n, d);
            components = components
                .into_iter()
                .flat_map(|prefix| {
                    factor.iter().map(move |e| {
                        let mut v = prefix.clone();
                        v[offset..offset + e.len()].copy_from_slice(e);
                        v
                    })
                })
                .collect();
        }
        let components = components.into_iter().map(|e| ring.monomial(Monomial::new(&e), Rational::one())).collect();
        let family = Family::SegreVeronese { dims: dims.to_vec(), degrees: degrees.to_vec() };
        let map = Self::build(family, dims.to_vec(), degrees.to_vec(), components, ring)?;
        map.expect_rank(dims.iter().sum::<usize>() + 1)?;
        Ok(map)
    }

    /// The rational curve `[x:y] -> [g_0 : ... : g_m]` with `g_j = sum_k c_{jk} x^{d-k} y^k`.
    pub fn rational_curve(coefficients: &[Vec<Rational>]) -> Result<Self> {
        let cols = coefficients.first().map_or(0, Vec::len);
        if cols < 2 || coefficients.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("coefficient rows must share a length of at least 2".into()));
        }
        let d = (cols - 1) as u32;
        let m = Matrix::from_rows(RationalField, coefficients.to_vec())?;
        let rank = m.rank();
        if rank < coefficients.len() {
            return Err(Error::RankDeficientCoefficients { expected: coefficients.len(), found: rank });
        }
        let ring = Self::source_ring(&[1]);
        let components = coefficients
            .iter()
            .map(|row| {
                ring.from_terms(
                    row.iter().enumerate().map(|(k, c)| (Monomial::new(&[(cols - 1 - k) as u16, k as u16]), c.clone())),
                )
            })
            .collect();
        let map = Self::build(Family::RationalCurve { d }, vec![1], vec![d], components, ring)?;
        map.expect_rank(2)?;
        Ok(map)
    }

    /// Projection of the degree-`d` rational normal curve to `P^(d-1)` that forgets one
    /// coordinate chosen by `seed`. Seeds whose projection fails [`ParamMap::curve_smoothness_probe`]
    /// are skipped; returns the map and the seed actually used.
    pub fn row_drop_projection(d: u32, seed: u64) -> Result<(Self, u64)> {
        if d < 4 {
            return Err(Error::DimensionMismatch("row-drop projection needs degree at least 4".into()));
        }
        for s in seed..seed + 64 {
            let drop = ChaCha8Rng::seed_from_u64(s).gen_range(0..=d as usize);
            let rows: Vec<Vec<Rational>> = (0..=d as usize)
                .filter(|&j| j != drop)
                .map(|j| (0..=d as usize).map(|c| Rational::from((c == j) as i64)).collect())
                .collect();
            let map = Self::rational_curve(&rows)?;
            if map.curve_smoothness_probe(200, s)? {
                return Ok((map, s));
            }
        }
        Err(Error::Unsupported("no smooth row-drop projection found".into()))
    }

    /// Heuristic smoothness check for a curve: the map is defined with Jacobian rank 2 at
    /// `[1:0]`, `[0:1]` and at `samples` random points, and separates `samples` random pairs.
    pub fn curve_smoothness_probe(&self, samples: usize, seed: u64) -> Result<bool> {
        if self.dims != [1] {
            return Err(Error::Unsupported("smoothness probe is for curves".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let random = |rng: &mut ChaCha8Rng| vec![Rational::from(rng.gen_range(-1000i64..=1000)), Rational::from(rng.gen_range(1i64..=1000))];
        let mut points = vec![vec![Rational::from(1), Rational::zero()], vec![Rational::zero(), Rational::from(1)]];
        points.extend((0..samples).map(|_| random(&mut rng)));
        for p in &points {
            if self.evaluate(p)?.iter().all(|c| c.is_zero()) || self.jacobian_at(p)?.rank() < 2 {
                return Ok(false);
            }
        }
        for _ in 0..samples {
            let (p, q) = (random(&mut rng), random(&mut rng));
            if &p[0] * &q[1] == &p[1] * &q[0] {
                continue;
            }
            let image = Matrix::from_rows(RationalField, vec![self.evaluate(&p)?, self.evaluate(&q)?])?;
            if image.rank() < 2 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Base points used for del Pezzo surfaces, in the order they are taken.
    pub fn del_pezzo_base_points() -> [[i64; 3]; 4] {
        [[0, 0, 1], [0, 1, 0], [1, 0, 0], [1, 1, 1]]
    }

    /// The anticanonical embedding of the blow-up of `P^2` at the first `t` base points:
    /// a kernel basis of the evaluation of plane cubics at those points.
    pub fn del_pezzo(t: usize) -> Result<Self> {
        if !(1..=4).contains(&t) {
            return Err(Error::DelPezzoRange(t));
        }
        let cubics = monomial_exponents(2, 3);
        let points = &Self::del_pezzo_base_points()[..t];
        let rows: Vec<Vec<Rational>> = points
            .iter()
            .map(|p| {
                cubics
                    .iter()
                    .map(|e| Rational::from(e.iter().zip(p).map(|(&k, &x)| x.pow(k as u32)).product::<i64>()))
                    .collect()
            })
            .collect();
        let kernel = Matrix::from_rows(RationalField, rows)?.kernel_basis();
        let ring = Self::source_ring(&[2]);
        let components = kernel
            .into_iter()
            .map(|v| ring.from_terms(v.into_iter().zip(&cubics).map(|(c, e)| (Monomial::new(e), c))))
            .collect();
        let map = Self::build(Family::DelPezzo { t }, vec![2], vec![3], components, ring)?;
        map.expect_rank(3)?;
        Ok(map)
    }

    fn expect_rank(&self, expected: usize) -> Result<()> {
        if self.generic_rank != expected {
            return Err(Error::GenericRankMismatch { expected, found: self.generic_rank });
        }
        Ok(())
    }

    /// Maximum Jacobian rank over `trials` seeded random points with nonzero coordinates.
    pub fn validate_generic_rank(&self, trials: usize, seed: u64) -> Result<usize> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut best = 0;
        for _ in 0..trials.max(1) {
            let point: Vec<Rational> = (0..self.ring.nvars())
                .map(|_| {
                    let v: i64 = rng.gen_range(1..=50);
                    Rational::from(if rng.gen_bool(0.5) { v } else { -v })
                })
                .collect();
            best = best.max(self.jacobian_at(&point)?.rank());
        }
        Ok(best)
    }

    /// The Jacobian `(df_j / dx_i)` at a point given in flat source coordinates.
    pub fn jacobian_at(&self, point: &[Rational]) -> Result<Matrix<RationalField>> {
        let rows = self
            .jacobian
            .iter()
            .map(|row| row.iter().map(|p| p.evaluate(point)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(RationalField, rows)
    }

    /// Values of the components at a point.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Vec<Rational>> {
        self.components.iter().map(|f| f.evaluate(point)).collect()
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn ring(&self) -> &QRing {
        &self.ring
    }

    pub fn components(&self) -> &[QPoly] {
        &self.components
    }

    /// Symbolic Jacobian: one row per source variable, one column per component.
    pub fn jacobian(&self) -> &[Vec<QPoly>] {
        &self.jacobian
    }

    /// Generic rank of the Jacobian, `dim X + 1`.
    pub fn generic_rank(&self) -> usize {
        self.generic_rank
    }

    /// Dimension `N` of the target projective space.
    pub fn target_dim(&self) -> usize {
        self.components.len() - 1
    }

    /// Whether the components are linearly independent, i.e. the image spans the target.
    pub fn is_nondegenerate(&self) -> bool {
        let monomials: Vec<Monomial> = {
            let mut all: Vec<Monomial> =
                self.components.iter().flat_map(|f| f.terms().iter().map(|(m, _)| m.clone())).collect();
            all.sort_by(|a, b| self.ring.order().compare(a, b));
            all.dedup();
            all
        };
        let rows: Vec<Vec<Rational>> = self
            .components
            .iter()
            .map(|f| {
                monomials
                    .iter()
                    .map(|m| f.terms().iter().find(|(t, _)| t == m).map_or(Rational::zero(), |(_, c)| c.clone()))
                    .collect()
            })
            .collect();
        Matrix::from_rows(RationalField, rows).map(|m| m.rank() == self.components.len()).unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn veronese_shapes() {
        let v = ParamMap::veronese(2, 2).unwrap();
        let text: Vec<String> = v.components().iter().map(|p| p.to_string()).collect();
        assert_eq!(text, vec!["x_0_0^2", "x_0_0*x_0_1", "x_0_0*x_0_2", "x_0_1^2", "x_0_1*x_0_2", "x_0_2^2"]);
        assert_eq!(v.generic_rank(), 3);
        assert_eq!(v.target_dim(), 5);
        assert_eq!(ParamMap::veronese(2, 3).unwrap().target_dim(), 9);
        assert!(v.is_nondegenerate());
    }

    #[test]
    fn segre_veronese_shapes() {
        let sv = ParamMap::segre_veronese(&[1, 1], &[2, 2]).unwrap();
        assert_eq!(sv.target_dim(), 8);
        assert_eq!(sv.generic_rank(), 3);
        assert_eq!(sv.components()[1].to_string(), "x_0_0^2*x_1_0*x_1_1");
        assert!(ParamMap::segre_veronese(&[1], &[2, 2]).is_err());
    }

    #[test]
    fn rational_curve_requires_full_rank() {
        let row = |v: &[i64]| v.iter().map(|&x| Rational::from(x)).collect::<Vec<_>>();
        let c = ParamMap::rational_curve(&[row(&[1, 0, 0]), row(&[0, 1, 0]), row(&[0, 0, 1])]).unwrap();
        assert_eq!(c.components()[1].to_string(), "x_0_0*x_0_1");
        let err = ParamMap::rational_curve(&[row(&[1, 0, 0]), row(&[2, 0, 0])]).unwrap_err();
        assert!(matches!(err, Error::RankDeficientCoefficients { expected: 2, found: 1 }));
    }

    #[test]
    fn del_pezzo_one_point_uses_cubics_missing_the_last_monomial() {
        let s = ParamMap::del_pezzo(1).unwrap();
        assert_eq!(s.target_dim(), 8);
        let mut text: Vec<String> = s.components().iter().map(|p| p.to_string()).collect();
        text.sort();
        let mut expected: Vec<String> =
            monomial_exponents(2, 3)[..9].iter().map(|e| s.ring().monomial(Monomial::new(e), Rational::one()).to_string()).collect();
        expected.sort();
        assert_eq!(text, expected);
        assert_eq!(ParamMap::del_pezzo(4).unwrap().target_dim(), 5);
        assert!(matches!(ParamMap::del_pezzo(5), Err(Error::DelPezzoRange(5))));
    }

    fn coordinate_curve(d: usize, dropped: usize) -> ParamMap {
        let rows: Vec<Vec<Rational>> =
            (0..=d).filter(|&j| j != dropped).map(|j| (0..=d).map(|c| Rational::from((c == j) as i64)).collect()).collect();
        ParamMap::rational_curve(&rows).unwrap()
    }

    #[test]
    fn smoothness_probe_detects_cusps_and_base_points() {
        assert!(coordinate_curve(8, 4).curve_smoothness_probe(50, 0).unwrap());
        assert!(!coordinate_curve(8, 1).curve_smoothness_probe(50, 0).unwrap());
        assert!(!coordinate_curve(8, 7).curve_smoothness_probe(50, 0).unwrap());
        assert!(!coordinate_curve(8, 0).curve_smoothness_probe(50, 0).unwrap());
        assert!(ParamMap::veronese(2, 2).unwrap().curve_smoothness_probe(5, 0).is_err());
    }

    #[test]
    fn row_drop_projection_is_seeded_and_smooth() {
        let (a, seed_a) = ParamMap::row_drop_projection(8, 1).unwrap();
        let (b, seed_b) = ParamMap::row_drop_projection(8, 1).unwrap();
        assert_eq!(seed_a, seed_b);
        assert_eq!(a.components(), b.components());
        assert_eq!(a.target_dim(), 7);
        assert!(a.curve_smoothness_probe(200, seed_a).unwrap());
        for seed in 0..20 {
            let (m, used) = ParamMap::row_drop_projection(8, seed).unwrap();
            assert!(used >= seed);
            let dropped = (0..=8u16)
                .find(|&k| !m.components().iter().any(|c| c.terms()[0].0 == Monomial::new(&[8 - k, k])))
                .unwrap();
            assert!((2..=6).contains(&dropped), "seed {seed} dropped {dropped}");
        }
    }
}
