use std::rc::Rc;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;

use super::Matrix;
use crate::error::{Error, Result};
use crate::fields::Field;
use crate::poly::{PolyAccumulator, PolyRing, Polynomial};

/// A dense row-major matrix of polynomials from one ring.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix<F: Field> {
    ring: Arc<PolyRing<F>>,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial<F>>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn from_rows(ring: &Arc<PolyRing<F>>, rows: Vec<Vec<Polynomial<F>>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        if rows.iter().flatten().any(|p| !PolyRing::same(p.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        let n = rows.len();
        Ok(PolyMatrix { ring: ring.clone(), rows: n, cols, entries: rows.into_iter().flatten().collect() })
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial<F> {
        &self.entries[i * self.cols + j]
    }

    pub fn stack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!("cannot stack {} and {} columns", self.cols, other.cols)));
        }
        if !PolyRing::same(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(PolyMatrix { ring: self.ring.clone(), rows: self.rows + other.rows, cols: self.cols, entries })
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let entries = rows.iter().flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone())).collect();
        PolyMatrix { ring: self.ring.clone(), rows: rows.len(), cols: cols.len(), entries }
    }

    /// Applies `f` to every entry.
    pub fn map_entries(&self, f: impl Fn(&Polynomial<F>) -> Result<Polynomial<F>>) -> Result<Self> {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>>>()?;
        let ring = entries.first().map_or(self.ring.clone(), |p| p.ring().clone());
        Ok(PolyMatrix { ring, rows: self.rows, cols: self.cols, entries })
    }

    /// Evaluates every entry at a point.
    pub fn evaluate(&self, point: &[F::Elem]) -> Result<Matrix<F>> {
        let data = self.entries.iter().map(|p| p.evaluate(point)).collect::<Result<_>>()?;
        Matrix::new(self.ring.field().clone(), self.rows, self.cols, data)
    }
}

/// How determinants of polynomial submatrices are expanded.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MinorStrategy {
    /// Laplace expansion up to size 4, fraction-free elimination above.
    #[default]
    Auto,
    /// Memoized Laplace expansion along rows, sharing subdeterminants between column sets.
    Laplace,
    /// Fraction-free (Bareiss) elimination with exact polynomial division.
    Bareiss,
}

/// The minors produced by [`k_minors`], in ascending lexicographic order of
/// `(row subset, column subset)`.
#[derive(Clone, Debug)]
pub struct MinorSet<F: Field> {
    pub minors: Vec<Polynomial<F>>,
    pub indices: Vec<(Vec<usize>, Vec<usize>)>,
    /// Number of `k x k` minors of the matrix.
    pub total: u128,
    /// Whether only a random subset of the minors was computed.
    pub capped: bool,
    pub warnings: Vec<String>,
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// All `k`-subsets of `0..n` in ascending lexicographic order.
pub fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let mut next = out.clone();
        let mut i = k;
        current = loop {
            if i == 0 {
                break None;
            }
            i -= 1;
            if next[i] < n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                break Some(next);
            }
        };
        Some(out)
    })
}

/// The `rank`-th `k`-subset of `0..n` in lexicographic order.
fn unrank_combination(n: usize, k: usize, mut rank: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut start = 0;
    for slot in 0..k {
        let mut c = start;
        loop {
            let count = binomial(n - c - 1, k - slot - 1);
            if rank < count {
                break;
            }
            rank -= count;
            c += 1;
        }
        out.push(c);
        start = c + 1;
    }
    out
}

/// All `k x k` minors of `m`, or a seeded random subset of `cap` of them.
pub fn k_minors<F: Field>(m: &PolyMatrix<F>, k: usize, cap: Option<usize>, seed: u64) -> Result<MinorSet<F>> {
    k_minors_with(m, k, cap, seed, MinorStrategy::Auto)
}

/// [`k_minors`] with an explicit expansion strategy.
pub fn k_minors_with<F: Field>(
    m: &PolyMatrix<F>,
    k: usize,
    cap: Option<usize>,
    seed: u64,
    strategy: MinorStrategy,
) -> Result<MinorSet<F>> {
    if k == 0 || k > m.rows || k > m.cols {
        return Err(Error::MinorSizeOutOfRange { k, rows: m.rows, cols: m.cols });
    }
    let row_count = binomial(m.rows, k);
    let col_count = binomial(m.cols, k);
    let total = row_count * col_count;
    let mut warnings = Vec::new();
    let selection: Vec<(Vec<usize>, Vec<usize>)> = match cap {
        Some(cap) if (cap as u128) < total => {
            let total_usize = usize::try_from(total)
                .map_err(|_| Error::Unsupported(format!("{total} minors cannot be sampled")))?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut picks = rand::seq::index::sample(&mut rng, total_usize, cap).into_vec();
            picks.sort_unstable();
            warnings.push(format!("computing {cap} of {total} minors of size {k}; emptiness cannot be certified"));
            picks
                .into_iter()
                .map(|p| {
                    let p = p as u128;
                    (unrank_combination(m.rows, k, p / col_count), unrank_combination(m.cols, k, p % col_count))
                })
                .collect()
        }
        _ => {
            let cols: Vec<Vec<usize>> = combinations(m.cols, k).collect();
            combinations(m.rows, k).flat_map(|r| cols.iter().map(move |c| (r.clone(), c.clone()))).collect()
        }
    };
    let capped = (selection.len() as u128) < total;
    let use_laplace = match strategy {
        MinorStrategy::Auto => k <= 4,
        MinorStrategy::Laplace => true,
        MinorStrategy::Bareiss => false,
    };
    let mut minors = Vec::with_capacity(selection.len());
    if use_laplace {
        let mut start = 0;
        while start < selection.len() {
            let rows = &selection[start].0;
            let end = start + selection[start..].iter().take_while(|(r, _)| r == rows).count();
            let mut expander = LaplaceExpander::new(m, rows)?;
            for (_, cols) in &selection[start..end] {
                minors.push((*expander.det(cols_mask(cols))?).clone());
            }
            start = end;
        }
    } else {
        for (rows, cols) in &selection {
            minors.push(determinant_bareiss(&m.select(rows, cols))?);
        }
    }
    Ok(MinorSet { minors, indices: selection, total, capped, warnings })
}

fn cols_mask(cols: &[usize]) -> u128 {
    cols.iter().fold(0u128, |acc, &c| acc | (1u128 << c))
}

/// Memoized cofactor expansion for a fixed set of rows. Subdeterminants on the trailing
/// rows are cached by their column set, so all column subsets share work.
struct LaplaceExpander<'a, F: Field> {
    m: &'a PolyMatrix<F>,
    rows: &'a [usize],
    memo: FxHashMap<u128, Rc<Polynomial<F>>>,
}

impl<'a, F: Field> LaplaceExpander<'a, F> {
    fn new(m: &'a PolyMatrix<F>, rows: &'a [usize]) -> Result<Self> {
        if m.cols > 128 {
            return Err(Error::Unsupported("Laplace expansion supports at most 128 columns".into()));
        }
        Ok(LaplaceExpander { m, rows, memo: FxHashMap::default() })
    }

    fn det(&mut self, mask: u128) -> Result<Rc<Polynomial<F>>> {
        if let Some(p) = self.memo.get(&mask) {
            return Ok(p.clone());
        }
        let size = mask.count_ones() as usize;
        let row = self.rows[self.rows.len() - size];
        let result = if size == 1 {
            self.m.get(row, mask.trailing_zeros() as usize).clone()
        } else {
            let field = self.m.ring.field().clone();
            let mut acc = PolyAccumulator::new(&self.m.ring);
            let mut sign = field.one();
            let mut rest = mask;
            while rest != 0 {
                let c = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let entry = self.m.get(row, c);
                if !entry.is_zero() {
                    let sub = self.det(mask & !(1u128 << c))?;
                    if !sub.is_zero() {
                        acc.add_product(entry, &sub, &sign)?;
                    }
                }
                sign = field.neg(&sign);
            }
            acc.finish()
        };
        let result = Rc::new(result);
        self.memo.insert(mask, result.clone());
        Ok(result)
    }
}

/// Determinant by memoized Laplace expansion.
pub fn determinant_laplace<F: Field>(m: &PolyMatrix<F>) -> Result<Polynomial<F>> {
    if m.rows != m.cols {
        return Err(Error::DimensionMismatch(format!("determinant of a {}x{} matrix", m.rows, m.cols)));
    }
    if m.rows == 0 {
        return Ok(m.ring.one());
    }
    let rows: Vec<usize> = (0..m.rows).collect();
    let mut e = LaplaceExpander::new(m, &rows)?;
    let mask = if m.cols == 128 { u128::MAX } else { (1u128 << m.cols) - 1 };
    Ok((*e.det(mask)?).clone())
}

/// Determinant by fraction-free elimination; every division is exact.
pub fn determinant_bareiss<F: Field>(m: &PolyMatrix<F>) -> Result<Polynomial<F>> {
    let n = m.rows;
    if n != m.cols {
        return Err(Error::DimensionMismatch(format!("determinant of a {}x{} matrix", m.rows, m.cols)));
    }
    if n == 0 {
        return Ok(m.ring.one());
    }
    let mut a: Vec<Vec<Polynomial<F>>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j).clone()).collect()).collect();
    let mut prev = m.ring.one();
    let mut negate = false;
    for k in 0..n - 1 {
        let pivot = (k..n).filter(|&i| !a[i][k].is_zero()).min_by_key(|&i| a[i][k].len());
        let Some(p) = pivot else {
            return Ok(m.ring.zero());
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].checked_mul(&a[i][j])?.checked_sub(&a[i][k].checked_mul(&a[k][j])?)?;
                a[i][j] = num.exact_div(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { d.neg() } else { d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::RationalField;
    use crate::poly::{MonomialOrder, VariableLayout};

    fn generic_matrix(n: usize, m: usize) -> PolyMatrix<RationalField> {
        let names: Vec<String> = (0..n * m).map(|i| format!("a{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let ring = PolyRing::new(RationalField, VariableLayout::from_names(&refs).unwrap(), MonomialOrder::DegRevLex);
        let rows = (0..n).map(|i| (0..m).map(|j| ring.var(i * m + j)).collect()).collect();
        PolyMatrix::from_rows(&ring, rows).unwrap()
    }

    #[test]
    fn combinations_are_lexicographic() {
        let all: Vec<Vec<usize>> = combinations(4, 2).collect();
        assert_eq!(all, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        for (rank, c) in combinations(7, 3).enumerate() {
            assert_eq!(unrank_combination(7, 3, rank as u128), c);
        }
        assert_eq!(combinations(2, 3).count(), 0);
    }

    #[test]
    fn generic_two_by_three() {
        let m = generic_matrix(2, 3);
        let set = k_minors(&m, 2, None, 0).unwrap();
        assert_eq!(set.minors.len(), 3);
        assert!(!set.capped);
        assert_eq!(set.minors[0].to_string(), "-a1*a3+a0*a4");
        assert!(k_minors(&m, 3, None, 0).is_err());
    }

    #[test]
    fn laplace_matches_bareiss() {
        let m = generic_matrix(5, 5);
        let d1 = determinant_laplace(&m).unwrap();
        let d2 = determinant_bareiss(&m).unwrap();
        assert_eq!(d1, d2);
        assert_eq!(d1.len(), 120);
        let a = k_minors_with(&m, 4, None, 0, MinorStrategy::Laplace).unwrap();
        let b = k_minors_with(&m, 4, None, 0, MinorStrategy::Bareiss).unwrap();
        assert_eq!(a.minors, b.minors);
    }

    #[test]
    fn capped_selection_is_seeded() {
        let m = generic_matrix(3, 5);
        let a = k_minors(&m, 2, Some(7), 11).unwrap();
        let b = k_minors(&m, 2, Some(7), 11).unwrap();
        assert!(a.capped && a.total == 30 && a.minors.len() == 7);
        assert_eq!(a.indices, b.indices);
        assert!(a.indices.windows(2).all(|w| w[0] < w[1]));
        assert!(!a.warnings.is_empty());
        let full = k_minors(&m, 2, Some(30), 11).unwrap();
        assert!(!full.capped);
    }
}
