use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fields::{Rational, RationalField};
use crate::linalg::Matrix;
use crate::varieties::{Family, ParamMap};

use super::config::PointConfig;
use super::membership::stacked_jacobian;
use super::thresholds::first_nonempty_r;

const COORD: i64 = 20;
const ATTEMPTS: usize = 1000;

type Point = Vec<Rational>;

fn random_vec(rng: &mut ChaCha8Rng, len: usize) -> Point {
    loop {
        let v: Point = (0..len).map(|_| Rational::from(rng.gen_range(-COORD..=COORD))).collect();
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

fn nonzero(rng: &mut ChaCha8Rng) -> Rational {
    let v = rng.gen_range(1..=COORD);
    Rational::from(if rng.gen_bool(0.5) { v } else { -v })
}

fn combine(a: &Point, b: &Point, s: &Rational, t: &Rational) -> Point {
    a.iter().zip(b).map(|(x, y)| &(x * s) + &(y * t)).collect()
}

fn rank(points: &[&Point]) -> usize {
    Matrix::from_rows(RationalField, points.iter().map(|p| p.to_vec()).collect()).expect("equal lengths").rank()
}

/// Seeded distinct points on the line through two random points.
fn points_on_line(rng: &mut ChaCha8Rng, len: usize, count: usize) -> (Point, Point, Vec<Point>) {
    let (a, b) = loop {
        let a = random_vec(rng, len);
        let b = random_vec(rng, len);
        if rank(&[&a, &b]) == 2 {
            break (a, b);
        }
    };
    let mut params: Vec<(i64, i64)> = Vec::new();
    while params.len() < count {
        let s = rng.gen_range(-COORD..=COORD);
        let t = rng.gen_range(-COORD..=COORD);
        if (s, t) == (0, 0) || params.iter().any(|&(u, v)| u * t == v * s) {
            continue;
        }
        params.push((s, t));
    }
    let pts = params.iter().map(|&(s, t)| combine(&a, &b, &Rational::from(s), &Rational::from(t))).collect();
    (a, b, pts)
}

fn no_three_collinear(points: &[Point]) -> bool {
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            if rank(&[&points[i], &points[j]]) < 2 {
                return false;
            }
            for k in j + 1..n {
                if rank(&[&points[i], &points[j], &points[k]]) < 3 {
                    return false;
                }
            }
        }
    }
    true
}

fn no_four_coplanar(points: &[Point]) -> bool {
    let n = points.len();
    if points[0].len() < 4 {
        return true;
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    if rank(&[&points[i], &points[j], &points[k], &points[l]]) < 4 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Retries `build` until it yields a configuration whose points are all smooth.
fn smooth(map: &ParamMap, rng: &mut ChaCha8Rng, mut build: impl FnMut(&mut ChaCha8Rng) -> Option<Vec<Vec<Point>>>) -> Result<PointConfig> {
    for _ in 0..ATTEMPTS {
        let Some(points) = build(rng) else { continue };
        let Ok(config) = PointConfig::new(points) else { continue };
        if stacked_jacobian(map, &config).is_ok() {
            return Ok(config);
        }
    }
    Err(Error::InvalidConfiguration("could not sample a valid configuration".into()))
}

fn wrap(points: Vec<Point>) -> Vec<Vec<Point>> {
    points.into_iter().map(|p| vec![p]).collect()
}

fn factor_index(name: &str, prefix: &str, count: usize) -> Option<usize> {
    let i: usize = name.strip_prefix(prefix)?.parse().ok()?;
    (1..=count).contains(&i).then(|| i - 1)
}

/// A seeded configuration of `r` points lying exactly in the named special family of the
/// variety, or a matching control configuration (`"generic"` and friends).
///
/// Veronese: `collinear`, `collinear-plus-free`, `coplanar`, `non-collinear`, `generic`.
/// Segre-Veronese: `T_i` (1-based factor), `two-point`, `generic`.
/// Del Pezzo: `Y_i`, `U`, `Y`, `B_ij`, `generic`.
pub fn oracle_config(map: &ParamMap, name: &str, r: usize, seed: u64) -> Result<PointConfig> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let unknown = || Error::UnknownFamily(format!("{name} for {:?}", map.family()));
    match map.family().clone() {
        Family::Veronese { n, .. } => {
            let len = n + 1;
            match name {
                "collinear" => smooth(map, &mut rng, |rng| Some(wrap(points_on_line(rng, len, r).2))),
                "collinear-plus-free" => smooth(map, &mut rng, |rng| {
                    let (a, b, mut pts) = points_on_line(rng, len, r - 1);
                    let free = random_vec(rng, len);
                    if rank(&[&a, &b, &free]) < 3 {
                        return None;
                    }
                    pts.push(free);
                    Some(wrap(pts))
                }),
                "coplanar" => smooth(map, &mut rng, |rng| {
                    let basis: Vec<Point> = (0..3).map(|_| random_vec(rng, len)).collect();
                    if rank(&basis.iter().collect::<Vec<_>>()) < 3 {
                        return None;
                    }
                    let pts: Vec<Point> = (0..r)
                        .map(|_| {
                            let c: Vec<Rational> = (0..3).map(|_| Rational::from(rng.gen_range(-COORD..=COORD))).collect();
                            (0..len).map(|j| (0..3).fold(Rational::zero(), |acc, k| &acc + &(&c[k] * &basis[k][j]))).collect()
                        })
                        .collect();
                    no_three_collinear(&pts).then(|| wrap(pts))
                }),
                "non-collinear" if r >= 3 => smooth(map, &mut rng, |rng| {
                    let (a, b, mut pts) = points_on_line(rng, len, r - 1);
                    let free = random_vec(rng, len);
                    if rank(&[&a, &b, &free]) < 3 {
                        return None;
                    }
                    pts.push(free);
                    Some(wrap(pts))
                }),
                "generic" | "non-collinear" => smooth(map, &mut rng, |rng| {
                    let pts: Vec<Point> = (0..r).map(|_| random_vec(rng, len)).collect();
                    (no_three_collinear(&pts) && no_four_coplanar(&pts)).then(|| wrap(pts))
                }),
                _ => Err(unknown()),
            }
        }
        Family::SegreVeronese { dims, .. } => {
            if let Some(i) = factor_index(name, "T_", dims.len()) {
                let shared: Vec<Point> = dims.iter().map(|&n| random_vec(&mut rng, n + 1)).collect();
                return smooth(map, &mut rng, |rng| {
                    let line = points_on_line(rng, dims[i] + 1, r).2;
                    Some(line.into_iter().map(|p| {
                        let mut pt = shared.clone();
                        pt[i] = p;
                        pt
                    }).collect())
                });
            }
            match name {
                "two-point" => {
                    if r != 2 {
                        return Err(Error::InvalidConfiguration("two-point configurations have r = 2".into()));
                    }
                    smooth(map, &mut rng, |rng| {
                        let first: Vec<Point> = dims.iter().map(|&n| random_vec(rng, n + 1)).collect();
                        let second = dims
                            .iter()
                            .enumerate()
                            .map(|(f, &n)| if rng.gen_bool(0.5) { first[f].clone() } else { random_vec(rng, n + 1) })
                            .collect();
                        Some(vec![first, second])
                    })
                }
                "generic" => smooth(map, &mut rng, |rng| {
                    let pts: Vec<Vec<Point>> =
                        (0..r).map(|_| dims.iter().map(|&n| random_vec(rng, n + 1)).collect()).collect();
                    let distinct = (0..dims.len()).all(|f| {
                        (0..r).all(|a| (a + 1..r).all(|b| rank(&[&pts[a][f], &pts[b][f]]) == 2))
                    });
                    distinct.then_some(pts)
                }),
                _ => Err(unknown()),
            }
        }
        Family::DelPezzo { t } => {
            let base: Vec<Point> = ParamMap::del_pezzo_base_points()[..t]
                .iter()
                .map(|p| p.iter().map(|&x| Rational::from(x)).collect())
                .collect();
            let off_base = |pts: &[Point]| pts.iter().all(|p| base.iter().all(|z| rank(&[p, z]) == 2));
            let through_base = |p: &Point, q: &Point| base.iter().any(|z| rank(&[p, q, z]) < 3);
            if let Some(i) = factor_index(name, "Y_", t) {
                if r != 2 {
                    return Err(Error::InvalidConfiguration("Y_i configurations have r = 2".into()));
                }
                return smooth(map, &mut rng, |rng| {
                    let p = random_vec(rng, 3);
                    let q = combine(&base[i], &p, &nonzero(rng), &nonzero(rng));
                    off_base(&[p.clone(), q.clone()]).then(|| wrap(vec![p, q]))
                });
            }
            match name {
                "U" if t == 4 && r == 2 => smooth(map, &mut rng, |rng| {
                    // Conics through the four base points: a*xy + b*xz + c*yz with a + b + c = 0.
                    let a = nonzero(rng);
                    let b = nonzero(rng);
                    let c = -&(&a + &b);
                    if c.is_zero() {
                        return None;
                    }
                    let mut pts = Vec::new();
                    for _ in 0..2 {
                        let s = nonzero(rng);
                        let u = &b + &(&c * &s);
                        pts.push(vec![u.clone(), &s * &u, -&(&a * &s)]);
                    }
                    (off_base(&pts) && !through_base(&pts[0], &pts[1])).then(|| wrap(pts))
                }),
                "Y" if r == 3 => smooth(map, &mut rng, |rng| {
                    let pts = points_on_line(rng, 3, 3).2;
                    (off_base(&pts) && !through_base(&pts[0], &pts[1])).then(|| wrap(pts))
                }),
                _ if name.starts_with("B_") && r == 3 => {
                    let digits: Vec<usize> =
                        name[2..].chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect::<Option<_>>().ok_or_else(unknown)?;
                    let (i, j) = match digits[..] {
                        [i, j] if 1 <= i && i < j && j <= 3 => (i - 1, j - 1),
                        _ => return Err(unknown()),
                    };
                    smooth(map, &mut rng, |rng| {
                        let p = random_vec(rng, 3);
                        let q = combine(&base[0], &p, &nonzero(rng), &nonzero(rng));
                        let free = random_vec(rng, 3);
                        let mut pts = vec![Vec::new(); 3];
                        let k = 3 - i - j;
                        pts[i] = p;
                        pts[j] = q;
                        pts[k] = free;
                        let ok = off_base(&pts)
                            && rank(&[&pts[0], &pts[1], &pts[2]]) == 3
                            && !through_base(&pts[i], &pts[k])
                            && !through_base(&pts[j], &pts[k]);
                        ok.then(|| wrap(pts))
                    })
                }
                "generic" => smooth(map, &mut rng, |rng| {
                    let pts: Vec<Point> = (0..r).map(|_| random_vec(rng, 3)).collect();
                    let mut all = base.clone();
                    all.extend(pts.iter().cloned());
                    let mut ok = no_three_collinear(&all);
                    if t == 4 && r == 2 {
                        ok &= !on_conic_with_base(&base, &pts);
                    }
                    ok.then(|| wrap(pts))
                }),
                _ => Err(unknown()),
            }
        }
        Family::RationalCurve { .. } => match name {
            "generic" => smooth(map, &mut rng, |rng| {
                let pts: Vec<Point> = (0..r).map(|_| random_vec(rng, 2)).collect();
                Some(wrap(pts))
            }),
            _ => Err(unknown()),
        },
    }
}

/// Whether six plane points lie on a conic, by the rank of the conic evaluation matrix.
fn on_conic_with_base(base: &[Point], extra: &[Point]) -> bool {
    let rows: Vec<Vec<Rational>> = base
        .iter()
        .chain(extra)
        .map(|p| {
            let (x, y, z) = (&p[0], &p[1], &p[2]);
            vec![x * x, y * y, z * z, x * y, x * z, y * z]
        })
        .collect();
    let count = rows.len();
    Matrix::from_rows(RationalField, rows).expect("six columns").rank() < count.min(6)
}

/// Expected two-point membership for a Segre-Veronese variety: `r = 2` is the first nonempty
/// case and some factor in `J` is the only factor where the points differ.
pub fn sv_two_point_expected(map: &ParamMap, config: &PointConfig) -> Result<bool> {
    let threshold = first_nonempty_r(map.family())?;
    let j = if threshold.r == 2 { threshold.factors } else { Vec::new() };
    if config.r() != 2 {
        return Err(Error::InvalidConfiguration("expected a pair of points".into()));
    }
    let p = config.points();
    let differs: Vec<usize> =
        (0..p[0].len()).filter(|&f| rank(&[&p[0][f], &p[1][f]]) == 2).collect();
    Ok(differs.len() == 1 && j.contains(&differs[0]))
}

/// A seeded random smooth point of the source, as one coordinate vector per factor.
pub fn random_smooth_point(map: &ParamMap, seed: u64) -> Result<Vec<Vec<Rational>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ATTEMPTS {
        let point: Vec<Point> = map.dims().iter().map(|&n| random_vec(&mut rng, n + 1)).collect();
        let flat: Vec<Rational> = point.iter().flatten().cloned().collect();
        if map.jacobian_at(&flat)?.rank() == map.generic_rank() {
            return Ok(point);
        }
    }
    Err(Error::InvalidConfiguration("could not sample a smooth point".into()))
}
