//! Named self-check suites replaying the classification results on seeded examples.
//!
//! Every case carries an anchor string naming the statement it checks; failures print it.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fields::{Field, PrimeField, Rational, DEFAULT_PRIME};
use crate::groebner::GbOptions;
use crate::locus::{
    curve_emptiness_bounds, first_nonempty_r, locus_dimension, membership, oracle_config, random_smooth_point,
    sv_two_point_expected, terracini_ideal, CurveEmbedding, Exactness, PointConfig, TerraciniIdeal, TerraciniOptions,
};
use crate::varieties::{Family, IdealVariety, ParamMap, Variety};

/// Names accepted by [`run_suite`].
pub const SUITES: [&str; 5] = ["curves", "delpezzo", "veronese", "segre-veronese", "properties"];

/// Settings shared by all suites.
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Seeded configurations drawn per membership case.
    pub samples: usize,
    pub max_minors: Option<usize>,
    /// Run cases on worker threads.
    pub parallel: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: 0, samples: 10, max_minors: None, parallel: false }
    }
}

/// Outcome of one case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseResult {
    pub name: String,
    pub anchor: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of a whole suite, in case order.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.cases.iter().map(|c| c.name.len()).max().unwrap_or(0);
        writeln!(f, "suite {} (seed {})", self.suite, self.seed)?;
        for c in &self.cases {
            if c.passed {
                writeln!(f, "  PASS  {:width$}  {}", c.name, c.detail)?;
            } else {
                writeln!(f, "  FAIL  {:width$}  [{}] {}", c.name, c.anchor, c.detail)?;
            }
        }
        let passed = self.cases.iter().filter(|c| c.passed).count();
        write!(f, "{}: {passed}/{} cases passed", if self.passed() { "PASS" } else { "FAIL" }, self.cases.len())
    }
}

type CaseFn = Box<dyn Fn(&VerifyOptions) -> Result<String> + Send + Sync>;

struct Case {
    name: String,
    anchor: &'static str,
    run: CaseFn,
}

fn case(name: impl Into<String>, anchor: &'static str, run: impl Fn(&VerifyOptions) -> Result<String> + Send + Sync + 'static) -> Case {
    Case { name: name.into(), anchor, run: Box::new(run) }
}

fn execute(c: &Case, opts: &VerifyOptions) -> CaseResult {
    let (passed, detail) = match (c.run)(opts) {
        Ok(detail) => (true, detail),
        Err(e) => (false, e.to_string()),
    };
    CaseResult { name: c.name.clone(), anchor: c.anchor, passed, detail }
}

/// Runs the named suite. Results are deterministic in `opts.seed`.
pub fn run_suite(name: &str, opts: &VerifyOptions) -> Result<SuiteReport> {
    let cases = match name {
        "curves" => curves(),
        "delpezzo" => delpezzo(),
        "veronese" => veronese(),
        "segre-veronese" => segre_veronese(),
        "properties" => properties(),
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    let results = if opts.parallel {
        let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(cases.len().max(1));
        let mut slots: Vec<Option<CaseResult>> = vec![None; cases.len()];
        std::thread::scope(|s| {
            let chunk = cases.len().div_ceil(workers).max(1);
            for (cs, out) in cases.chunks(chunk).zip(slots.chunks_mut(chunk)) {
                s.spawn(move || {
                    for (c, slot) in cs.iter().zip(out.iter_mut()) {
                        *slot = Some(execute(c, opts));
                    }
                });
            }
        });
        slots.into_iter().map(|s| s.expect("every case ran")).collect()
    } else {
        cases.iter().map(|c| execute(c, opts)).collect()
    };
    Ok(SuiteReport { suite: name.to_string(), seed: opts.seed, cases: results })
}

fn fail(msg: impl Into<String>) -> Error {
    Error::InvalidConfiguration(msg.into())
}

fn field() -> Result<PrimeField> {
    PrimeField::new(DEFAULT_PRIME)
}

fn ideal_opts(opts: &VerifyOptions, verify: bool) -> TerraciniOptions {
    TerraciniOptions { seed: opts.seed, max_minors: opts.max_minors, verify, ..TerraciniOptions::default() }
}

fn expect_empty(variety: &Variety, r: usize, opts: &VerifyOptions) -> Result<String> {
    let t = terracini_ideal(variety, r, field()?, &ideal_opts(opts, false))?;
    if t.capped {
        return Err(fail("refusing to certify emptiness from a capped minor set"));
    }
    if !t.ideal.is_unit()? {
        return Err(fail(format!("ideal is proper (Krull dimension {})", t.ideal.krull_dimension()?)));
    }
    Ok("unit ideal".into())
}

fn expect_locus(variety: &Variety, r: usize, expected: std::ops::Range<i64>, opts: &VerifyOptions) -> Result<String> {
    let t = terracini_ideal(variety, r, field()?, &ideal_opts(opts, false))?;
    let d = locus_dimension(&t)?;
    match d.locus_dim {
        Some(dim) if expected.contains(&dim) => Ok(format!("locus dimension {dim} ({})", d.exactness)),
        other => Err(fail(format!("locus dimension {other:?}, expected within {expected:?}"))),
    }
}

fn seeds(opts: &VerifyOptions, salt: u64) -> impl Iterator<Item = u64> {
    let base = opts.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ salt.wrapping_mul(0xbf58_476d_1ce4_e5b9);
    (0..opts.samples as u64).map(move |k| base.wrapping_add(k))
}

/// Draws `samples` configurations of the named family and checks each classification.
fn classify(map: &ParamMap, family: &str, r: usize, member: bool, salt: u64, opts: &VerifyOptions) -> Result<String> {
    let variety = Variety::Param(map.clone());
    for seed in seeds(opts, salt) {
        let config = oracle_config(map, family, r, seed)?;
        let report = membership(&variety, &config)?;
        if report.is_member() != member {
            return Err(fail(format!(
                "{family} configuration {} has rank {} (threshold {})",
                config.to_json(),
                report.rank,
                report.threshold
            )));
        }
    }
    Ok(format!("{} configurations {}", opts.samples, if member { "MEMBER" } else { "NON-MEMBER" }))
}

fn octic() -> Result<ParamMap> {
    Ok(ParamMap::row_drop_projection(8, OCTIC_SEED)?.0)
}

/// Seed for the coordinate projection of the degree-8 normal curve used by the suites.
pub const OCTIC_SEED: u64 = 1;

/// The elliptic normal quartic in `P^3` cut out by two quadrics.
pub fn elliptic_quartic() -> Result<IdealVariety> {
    IdealVariety::from_text(
        3,
        &["x_0_0*x_0_1 - x_0_2^2 + x_0_3^2".to_string(), "x_0_0*x_0_3 + 2*x_0_1*x_0_3 + x_0_2^2 - x_0_2*x_0_3".to_string()],
    )
}

/// The quintic `[x^5 : x^4 y : x^3 y^2 : x y^4 : y^5]` in `P^4`.
pub fn monomial_quintic() -> Result<ParamMap> {
    let rows: Vec<Vec<Rational>> = [0usize, 1, 2, 4, 5]
        .iter()
        .map(|&j| (0..=5).map(|c| Rational::from((c == j) as i64)).collect())
        .collect();
    ParamMap::rational_curve(&rows)
}

fn curves() -> Vec<Case> {
    vec![
        case("cubic r=2 empty", "curves:twisted-cubic-empty", |o| {
            expect_empty(&Variety::Param(ParamMap::veronese(1, 3)?), 2, o)
        }),
        case("quintic r=2 empty", "curves:monomial-quintic-empty", |o| expect_empty(&Variety::Param(monomial_quintic()?), 2, o)),
        case("octic r=2 empty", "curves:rational-octic-empty", |o| expect_empty(&Variety::Param(octic()?), 2, o)),
        case("elliptic quartic r=2 curve", "curves:non-normal-rational-infinite", |o| {
            let x = Variety::Ideal(elliptic_quartic()?);
            let t = terracini_ideal(&x, 2, field()?, &ideal_opts(o, false))?;
            let d = locus_dimension(&t)?;
            if d.exactness != Exactness::Exact {
                return Err(fail("ideal route must be exact"));
            }
            match d.locus_dim {
                Some(1) => Ok("locus dimension 1 (exact)".into()),
                other => Err(fail(format!("locus dimension {other:?}, expected 1"))),
            }
        }),
        case("emptiness bound table", "curves:genus-bounds", |_| {
            for n in 3..=9usize {
                for r in 2..=(n + 1) / 2 {
                    let rational = curve_emptiness_bounds(0, CurveEmbedding::Complete { ambient: n }, r);
                    let elliptic = curve_emptiness_bounds(1, CurveEmbedding::Complete { ambient: n }, r);
                    if !rational || elliptic != (2 * r <= n) {
                        return Err(fail(format!("N = {n}, r = {r}: got ({rational}, {elliptic})")));
                    }
                }
            }
            Ok("N = 3..9".into())
        }),
    ]
}

fn delpezzo() -> Vec<Case> {
    let mut cases = Vec::new();
    for t in 1..=4usize {
        for i in 1..=t {
            cases.push(case(format!("t={t} Y_{i} member"), "delpezzo:exceptional-line-pairs", move |o| {
                classify(&ParamMap::del_pezzo(t)?, &format!("Y_{i}"), 2, true, (t * 10 + i) as u64, o)
            }));
        }
        cases.push(case(format!("t={t} generic non-member"), "delpezzo:components-are-exactly", move |o| {
            classify(&ParamMap::del_pezzo(t)?, "generic", 2, false, 100 + t as u64, o)
        }));
    }
    cases.push(case("t=4 U member", "delpezzo:conic-through-base-points", |o| {
        classify(&ParamMap::del_pezzo(4)?, "U", 2, true, 200, o)
    }));
    cases
}

fn veronese() -> Vec<Case> {
    let mut cases = Vec::new();
    for (n, d) in [(2usize, 3u32), (2, 4), (3, 3)] {
        let r = (d as usize + 2).div_ceil(2);
        cases.push(case(format!("V({n},{d}) threshold"), "veronese:first-nonempty", move |_| {
            let t = first_nonempty_r(&Family::Veronese { n, d })?;
            if t.r != r {
                return Err(fail(format!("threshold {} != {r}", t.r)));
            }
            Ok(format!("r = {r}"))
        }));
        cases.push(case(format!("V({n},{d}) r={r} collinear member"), "veronese:contained-in-a-line", move |o| {
            classify(&ParamMap::veronese(n, d)?, "collinear", r, true, (n * 10) as u64 + d as u64, o)
        }));
        cases.push(case(format!("V({n},{d}) r={r} non-collinear non-member"), "veronese:contained-in-a-line", move |o| {
            classify(&ParamMap::veronese(n, d)?, "non-collinear", r, false, 1000 + (n * 10) as u64 + d as u64, o)
        }));
    }
    cases.push(case("V(2,4) r=4 three collinear member", "veronese:r-minus-one-collinear", |o| {
        classify(&ParamMap::veronese(2, 4)?, "collinear-plus-free", 4, true, 2000, o)
    }));
    cases.push(case("V(2,4) r=4 no three collinear non-member", "veronese:r-minus-one-collinear", |o| {
        classify(&ParamMap::veronese(2, 4)?, "coplanar", 4, false, 2001, o)
    }));
    cases.push(case("V(2,3) r=3 locus dimension", "veronese:irreducible-of-dimension", |o| {
        expect_locus(&Variety::Param(ParamMap::veronese(2, 3)?), 3, 5..6, o)
    }));
    cases
}

/// Smallest `r` with `2r >= d + 2`, minimized over the factors, and the factors attaining it.
fn sv_definition(degrees: &[u32]) -> (usize, Vec<usize>) {
    let per: Vec<usize> = degrees.iter().map(|&d| (1..).find(|&r| 2 * r >= d as usize + 2).unwrap()).collect();
    let r = *per.iter().min().unwrap();
    (r, (0..per.len()).filter(|&i| per[i] == r).collect())
}

fn segre_veronese() -> Vec<Case> {
    let degree_sets: [[u32; 2]; 4] = [[1, 3], [2, 2], [3, 3], [2, 3]];
    let mut cases = Vec::new();
    for degrees in degree_sets {
        cases.push(case(format!("SV{degrees:?} threshold"), "segre-veronese:first-nonempty", move |_| {
            let family = Family::SegreVeronese { dims: vec![1, 1], degrees: degrees.to_vec() };
            let t = first_nonempty_r(&family)?;
            let (r, factors) = sv_definition(&degrees);
            if (t.r, &t.factors) != (r, &factors) {
                return Err(fail(format!("got r = {} J = {:?}, expected r = {r} J = {factors:?}", t.r, t.factors)));
            }
            Ok(format!("r = {r}, J = {factors:?}"))
        }));
        cases.push(case(format!("SV{degrees:?} two-point classification"), "segre-veronese:two-points-iff", move |o| {
            let map = ParamMap::segre_veronese(&[1, 1], &degrees)?;
            let variety = Variety::Param(map.clone());
            let (mut members, mut total) = (0, 0);
            for seed in seeds(o, 3000 + degrees[0] as u64 * 10 + degrees[1] as u64) {
                let config = oracle_config(&map, "two-point", 2, seed)?;
                let got = membership(&variety, &config)?.is_member();
                if got != sv_two_point_expected(&map, &config)? {
                    return Err(fail(format!("pair {} classified {}", config.to_json(), got)));
                }
                members += got as usize;
                total += 1;
            }
            Ok(format!("{total} pairs, {members} members"))
        }));
    }
    for i in 1..=2usize {
        cases.push(case(format!("SV[3, 3] r=3 T_{i} member"), "segre-veronese:component-of-dimension", move |o| {
            classify(&ParamMap::segre_veronese(&[1, 1], &[3, 3])?, &format!("T_{i}"), 3, true, 4000 + i as u64, o)
        }));
    }
    cases.push(case("SV[2, 2] r=2 locus dimension", "segre-veronese:component-of-dimension", |o| {
        expect_locus(&Variety::Param(ParamMap::segre_veronese(&[1, 1], &[2, 2])?), 2, 3..4, o)
    }));
    cases
}

fn random_scales(rng: &mut ChaCha8Rng, config: &PointConfig) -> Vec<Vec<Rational>> {
    (0..config.r())
        .map(|_| {
            (0..config.dims().len())
                .map(|_| {
                    let v: i64 = rng.gen_range(1..=30);
                    Rational::from(if rng.gen_bool(0.5) { v } else { -v })
                })
                .collect()
        })
        .collect()
}

fn evaluate_config<F: Field>(t: &TerraciniIdeal<F>, config: &PointConfig) -> Result<Vec<bool>> {
    let field = t.ideal.ring().field().clone();
    let point = (0..config.r())
        .flat_map(|i| config.flat(i))
        .map(|c| field.from_rational(&c))
        .collect::<Result<Vec<_>>>()?;
    let gb = t.ideal.groebner(&GbOptions::default())?;
    gb.polys().iter().map(|g| Ok(field.is_zero(&g.evaluate(&point)?))).collect()
}

fn properties() -> Vec<Case> {
    vec![
        case("permutation and scaling invariance", "properties:alternating-multilinear", |o| {
            let map = ParamMap::veronese(2, 3)?;
            let variety = Variety::Param(map.clone());
            let mut rng = ChaCha8Rng::seed_from_u64(o.seed ^ 0x5ca1e);
            for (k, seed) in seeds(o, 5000).enumerate() {
                let family = if k % 2 == 0 { "collinear" } else { "generic" };
                let config = oracle_config(&map, family, 3, seed)?;
                let base = membership(&variety, &config)?;
                let mut perm: Vec<usize> = (0..config.r()).collect();
                perm.rotate_left(1 + k % 2);
                let moved = config.permuted(&perm)?.rescaled(&random_scales(&mut rng, &config))?;
                let other = membership(&variety, &moved)?;
                if (base.rank, base.is_member()) != (other.rank, other.is_member()) {
                    return Err(fail(format!("rank {} became {} for {}", base.rank, other.rank, config.to_json())));
                }
            }
            Ok(format!("{} configurations", o.samples))
        }),
        case("monotonicity in r", "properties:adding-a-point", |o| {
            let map = ParamMap::veronese(2, 4)?;
            let variety = Variety::Param(map.clone());
            for seed in seeds(o, 6000) {
                let config = oracle_config(&map, "collinear", 3, seed)?;
                let bigger = config.with_point(random_smooth_point(&map, seed ^ 0xadd)?)?;
                if !membership(&variety, &config)?.is_member() || !membership(&variety, &bigger)?.is_member() {
                    return Err(fail(format!("{} lost membership after adding a point", config.to_json())));
                }
            }
            Ok(format!("{} configurations", o.samples))
        }),
        case("Groebner post-check", "properties:s-polynomials-reduce", |o| {
            let mut checked = 0;
            for variety in [Variety::Param(monomial_quintic()?), Variety::Param(ParamMap::segre_veronese(&[1, 1], &[1, 2])?)] {
                let t = terracini_ideal(&variety, 2, field()?, &ideal_opts(o, true))?;
                checked += t.ideal.groebner(&GbOptions { verify: true })?.polys().len();
            }
            Ok(format!("every basis verified, {checked} final elements"))
        }),
        case("ideal and rank agree", "properties:ideal-vanishes-on-members", |o| {
            let map = ParamMap::segre_veronese(&[1, 1], &[1, 2])?;
            let variety = Variety::Param(map.clone());
            let t = terracini_ideal(&variety, 2, field()?, &ideal_opts(o, true))?;
            if t.capped {
                return Err(fail("capped minor set"));
            }
            for seed in seeds(o, 7000) {
                for family in ["T_1", "T_2", "generic"] {
                    let config = oracle_config(&map, family, 2, seed)?;
                    let member = membership(&variety, &config)?.is_member();
                    let values = evaluate_config(&t, &config)?;
                    let vanishes = values.iter().all(|&z| z);
                    if member != vanishes {
                        return Err(fail(format!("{family} {}: member {member}, ideal vanishes {vanishes}", config.to_json())));
                    }
                }
            }
            Ok(format!("{} configurations per family", o.samples))
        }),
    ]
}
