use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::fields::{Field, FieldSpec};
use crate::groebner::{random_combination, saturate, GbOptions, Ideal};
use crate::linalg::{k_minors_with, MinorStrategy, PolyMatrix};
use crate::poly::{Monomial, MonomialOrder, PolyAccumulator, PolyRing, Polynomial, VariableLayout};
use crate::varieties::{QPoly, Variety};

use super::membership::admissible_r_range;

/// Which Jacobian the determinantal conditions are built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// `A = J_f` of a parametrization, no ideal conditions on the points.
    Parametrization,
    /// `A = J_f^T` of the generators, with the points constrained to the variety.
    Ideal,
}

/// Whether a locus dimension is exact or only a lower bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exactness {
    Exact,
    LowerBound,
}

impl std::fmt::Display for Exactness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Exactness::Exact => "exact",
            Exactness::LowerBound => "lower-bound",
        })
    }
}

impl Route {
    /// Only two-point ideal-route dimensions are exact.
    pub fn exactness(self, r: usize) -> Exactness {
        match (self, r) {
            (Route::Ideal, 2) => Exactness::Exact,
            _ => Exactness::LowerBound,
        }
    }
}

/// Knobs for [`terracini_ideal`].
#[derive(Clone, Debug)]
pub struct TerraciniOptions {
    pub seed: u64,
    /// Compute at most this many minors, sampled with `seed`.
    pub max_minors: Option<usize>,
    pub minor_strategy: MinorStrategy,
    /// Post-check every Groebner basis.
    pub verify: bool,
}

impl Default for TerraciniOptions {
    fn default() -> Self {
        TerraciniOptions { seed: 0, max_minors: None, minor_strategy: MinorStrategy::Laplace, verify: false }
    }
}

/// The saturated determinantal ideal of configurations of `r` points, over the ring with one
/// variable block per point and factor.
#[derive(Clone, Debug)]
pub struct TerraciniIdeal<F: Field> {
    pub ideal: Ideal<F>,
    pub route: Route,
    pub r: usize,
    /// Number of projective factors of the source.
    pub factors: usize,
    /// Size of the minors taken, `min(r * l, columns)`.
    pub minor_size: usize,
    /// Whether only a sample of the minors was used.
    pub capped: bool,
    pub warnings: Vec<String>,
}

fn to_field<F: Field>(p: &QPoly, target: &Arc<PolyRing<F>>) -> Result<Polynomial<F>> {
    let field = target.field().clone();
    p.map_coefficients(target, |c| field.from_rational(c))
}

fn mix(seed: u64, salt: u64) -> u64 {
    seed ^ salt.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

fn linear_form<F: Field>(ring: &Arc<PolyRing<F>>, vars: std::ops::Range<usize>, seed: u64) -> Polynomial<F> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = ring.field();
    ring.from_terms(vars.map(|v| (Monomial::var(ring.nvars(), v, 1), field.random_nonzero(&mut rng))))
}

/// A generic form vanishing where the `l x l` minors of the source Jacobian vanish (together
/// with `conditions`), away from zero coordinate vectors. `None` when that set is empty.
fn rank_drop_form<F: Field>(
    jacobian: &PolyMatrix<F>,
    l: usize,
    conditions: &[Polynomial<F>],
    opts: &GbOptions,
    seed: u64,
) -> Result<Option<Polynomial<F>>> {
    let ring = jacobian.ring().clone();
    let mut gens = k_minors_with(jacobian, l, None, seed, MinorStrategy::Laplace)?.minors;
    gens.extend(conditions.iter().cloned());
    let mut ideal = Ideal::new(&ring, gens)?;
    for (k, block) in ring.layout().blocks().iter().enumerate() {
        let form = linear_form(&ring, block.range(), mix(seed, k as u64));
        ideal = saturate(&ideal, &form, opts)?;
    }
    let gb = ideal.groebner(opts)?;
    if gb.is_unit() {
        return Ok(None);
    }
    let degree = gb.polys().iter().filter_map(Polynomial::total_degree).max().unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = PolyAccumulator::new(&ring);
    for (k, h) in gb.polys().iter().enumerate() {
        let lift = linear_form(&ring, 0..ring.nvars(), mix(seed, 1000 + k as u64))
            .pow(degree - h.total_degree().unwrap_or(0))?;
        acc.add_product(h, &lift, &ring.field().random_nonzero(&mut rng))?;
    }
    Ok(Some(acc.finish()))
}

/// Builds and saturates the ideal of `r`-point configurations whose stacked Jacobian drops
/// rank. Each saturating ideal (zero coordinate vectors, single-point rank drop, coinciding
/// points) is replaced by one seeded generic element vanishing on the same set.
pub fn terracini_ideal<F: Field>(variety: &Variety, r: usize, field: F, opts: &TerraciniOptions) -> Result<TerraciniIdeal<F>> {
    let range = admissible_r_range(variety)?;
    range.check(r)?;
    let (route, dims, rows, conditions): (Route, Vec<usize>, &[Vec<QPoly>], &[QPoly]) = match variety {
        Variety::Param(map) => (Route::Parametrization, map.dims().to_vec(), map.jacobian(), &[]),
        Variety::Ideal(x) => {
            if r != 2 {
                return Err(crate::Error::Unsupported(format!("the ideal route needs r = 2, got r = {r}")));
            }
            (Route::Ideal, vec![x.ambient_dim()], x.jacobian(), x.generators())
        }
    };
    let l = variety.generic_rank();
    let source = PolyRing::new(field.clone(), VariableLayout::source(&dims), MonomialOrder::DegRevLex);
    let ring = PolyRing::new(field.clone(), VariableLayout::configuration(r, &dims), MonomialOrder::DegRevLex);
    let rows_f = rows
        .iter()
        .map(|row| row.iter().map(|p| to_field(p, &source)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let conditions_f = conditions.iter().map(|p| to_field(p, &source)).collect::<Result<Vec<_>>>()?;

    let mut blocks = Vec::with_capacity(r);
    for i in 0..r {
        let block: Vec<Vec<Polynomial<F>>> = rows_f
            .iter()
            .map(|row| row.iter().map(|p| p.substitute_block(&ring, i)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        blocks.push(block);
    }
    let stacked = PolyMatrix::from_rows(&ring, blocks.concat())?;
    let k = (r * l).min(stacked.cols());
    let mut warnings = Vec::new();
    if r * l > stacked.cols() {
        warnings.push(format!("r * l = {} exceeds the {} columns; every configuration qualifies", r * l, stacked.cols()));
    }
    let minors = k_minors_with(&stacked, k, opts.max_minors, opts.seed, opts.minor_strategy)?;
    warnings.extend(minors.warnings.iter().cloned());
    let mut gens = minors.minors;
    for i in 0..r {
        for g in &conditions_f {
            gens.push(g.substitute_block(&ring, i)?);
        }
    }

    let gb_opts = GbOptions { verify: opts.verify };
    let layout = ring.layout().clone();
    let mut saturators = Vec::new();
    let mut salt = 0u64;
    let mut next_seed = || {
        salt += 1;
        mix(opts.seed, salt)
    };
    // Configurations with a zero coordinate vector.
    for i in 0..r {
        for f in 0..dims.len() {
            let block = layout.block(&format!("z_{i}_{f}"))?.range();
            saturators.push(linear_form(&ring, block, next_seed()));
        }
    }
    // Points where the single-point Jacobian drops rank away from the zero vectors.
    let source_rows = PolyMatrix::from_rows(&source, rows_f)?;
    if let Some(h) = rank_drop_form(&source_rows, l, &conditions_f, &gb_opts, next_seed())? {
        for i in 0..r {
            saturators.push(h.substitute_block(&ring, i)?);
        }
    }
    // Coinciding points.
    for i in 0..r {
        for j in i + 1..r {
            let mut dup = Vec::new();
            for (f, &n) in dims.iter().enumerate() {
                let zi = layout.block(&format!("z_{i}_{f}"))?.range().start;
                let zj = layout.block(&format!("z_{j}_{f}"))?.range().start;
                for a in 0..=n {
                    for b in a + 1..=n {
                        let p = ring.var(zi + a).checked_mul(&ring.var(zj + b))?;
                        let q = ring.var(zi + b).checked_mul(&ring.var(zj + a))?;
                        dup.push(p.checked_sub(&q)?);
                    }
                }
            }
            saturators.push(random_combination(&ring, &dup, next_seed())?);
        }
    }

    // Factors of a generator that are saturated away anyway can be dropped up front.
    gens.retain(|g| !g.is_zero());
    for gen in gens.iter_mut() {
        for g in &saturators {
            while let Ok(q) = gen.exact_div(g) {
                *gen = q;
            }
        }
    }
    let mut ideal = Ideal::new(&ring, gens)?;
    for g in &saturators {
        if ideal.groebner(&gb_opts)?.is_unit() {
            break;
        }
        ideal = saturate(&ideal, g, &gb_opts)?;
    }
    ideal.groebner(&gb_opts)?;
    Ok(TerraciniIdeal { ideal, route, r, factors: dims.len(), minor_size: k, capped: minors.capped, warnings })
}

/// Krull dimension of a Terracini ideal and the resulting locus dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocusDimension {
    pub krull_dim: i64,
    /// `krull_dim - r * k`, or `None` when the ideal is the unit ideal.
    pub locus_dim: Option<i64>,
    pub exactness: Exactness,
}

impl LocusDimension {
    pub fn is_empty(&self) -> bool {
        self.locus_dim.is_none()
    }
}

/// Dimension of the locus cut out by a Terracini ideal, after removing the `r * k`
/// dimensions of affine rescaling.
pub fn locus_dimension<F: Field>(t: &TerraciniIdeal<F>) -> Result<LocusDimension> {
    let krull_dim = t.ideal.krull_dimension()?;
    let locus_dim = (krull_dim >= 0).then(|| krull_dim - (t.r * t.factors) as i64);
    Ok(LocusDimension { krull_dim, locus_dim, exactness: t.route.exactness(t.r) })
}

/// Which computation produced a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Membership,
    Ideal,
    Dimension,
}

fn locus_dim_json<S: Serializer>(v: &Option<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(d) => s.serialize_i64(*d),
        None => s.serialize_str("empty"),
    }
}

fn display_json<S: Serializer>(v: &FieldSpec, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Summary of an ideal or dimension computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TerraciniReport {
    pub mode: Mode,
    #[serde(serialize_with = "display_json")]
    pub field: FieldSpec,
    pub seed: u64,
    pub r: usize,
    pub k: usize,
    pub krull_dim: i64,
    #[serde(serialize_with = "locus_dim_json")]
    pub locus_dim: Option<i64>,
    pub empty: bool,
    pub exactness: Exactness,
    pub capped: bool,
    pub wall_ms: u64,
    pub generators_path: Option<String>,
}

impl TerraciniReport {
    pub fn new<F: Field>(mode: Mode, t: &TerraciniIdeal<F>, seed: u64, wall_ms: u64) -> Result<Self> {
        let d = locus_dimension(t)?;
        Ok(TerraciniReport {
            mode,
            field: t.ideal.ring().field().spec(),
            seed,
            r: t.r,
            k: t.factors,
            krull_dim: d.krull_dim,
            locus_dim: d.locus_dim,
            empty: d.is_empty(),
            exactness: d.exactness,
            capped: t.capped,
            wall_ms,
            generators_path: None,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Canonical text of the reduced Groebner basis, one polynomial per line.
pub fn generators_text<F: Field>(t: &TerraciniIdeal<F>) -> Result<String> {
    let gb = t.ideal.groebner(&GbOptions::default())?;
    Ok(gb.polys().iter().map(|p| format!("{p}\n")).collect())
}
