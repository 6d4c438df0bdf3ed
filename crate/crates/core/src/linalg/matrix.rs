use std::fmt;

use crate::error::{Error, Result};
use crate::fields::Field;

/// A dense row-major matrix over a field.
#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|a| self.field.format(a)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> Matrix<F> {
    pub fn new(field: F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Matrix { field, rows, cols, data }
    }

    /// Builds a matrix from rows of equal length.
    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let n = rows.len();
        Self::new(field, n, cols, rows.into_iter().flatten().collect())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { field: self.field.clone(), rows: self.cols, cols: self.rows, data }
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!("cannot stack {} and {} columns", self.cols, other.cols)));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Submatrix on the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let data = rows.iter().flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone())).collect();
        Matrix { field: self.field.clone(), rows: rows.len(), cols: cols.len(), data }
    }

    pub fn map<G: Field>(&self, field: G, f: impl Fn(&F::Elem) -> Result<G::Elem>) -> Result<Matrix<G>> {
        let data = self.data.iter().map(f).collect::<Result<_>>()?;
        Ok(Matrix { field, rows: self.rows, cols: self.cols, data })
    }

    /// Fraction-free row echelon form. Returns the rank and the sign of the row permutation.
    fn bareiss(&mut self) -> (usize, bool) {
        let f = self.field.clone();
        let mut prev = f.one();
        let mut rank = 0;
        let mut swapped = false;
        for c in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            if p != rank {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, rank * self.cols + j);
                }
                swapped = !swapped;
            }
            let pivot = self.get(rank, c).clone();
            for i in rank + 1..self.rows {
                let lead = self.get(i, c).clone();
                for j in c + 1..self.cols {
                    let v = f.sub(&f.mul(&pivot, self.get(i, j)), &f.mul(&lead, self.get(rank, j)));
                    self.set(i, j, f.div(&v, &prev).expect("Bareiss pivots are nonzero"));
                }
                self.set(i, c, f.zero());
            }
            prev = pivot;
            rank += 1;
        }
        (rank, swapped)
    }

    /// Rank by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        self.clone().bareiss().0
    }

    pub fn determinant(&self) -> Result<F::Elem> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        if self.rows == 0 {
            return Ok(self.field.one());
        }
        let mut m = self.clone();
        let (rank, swapped) = m.bareiss();
        if rank < self.rows {
            return Ok(self.field.zero());
        }
        // With full rank every column is a pivot column and the last pivot is the determinant.
        let d = m.get(self.rows - 1, self.cols - 1).clone();
        Ok(if swapped { self.field.neg(&d) } else { d })
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            for j in 0..m.cols {
                m.data.swap(p * m.cols + j, r * m.cols + j);
            }
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let mut v = m.get(i, j).clone();
                    f.sub_mul_assign(&mut v, &factor, m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// A basis of the right kernel `{v : M v = 0}`, one vector per free column, each with a
    /// one in its free position.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m.get(r, fc));
                }
                v
            })
            .collect()
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    f.add_assign(&mut acc, &f.mul(a, b));
                }
                acc
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{PrimeField, Rational, RationalField};

    fn q(rows: &[&[i64]]) -> Matrix<RationalField> {
        Matrix::from_rows(RationalField, rows.iter().map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn rank_and_determinant() {
        let m = q(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.determinant().unwrap(), Rational::zero());
        let m = q(&[&[0, 2, 1], &[3, 0, 0], &[1, 1, 1]]);
        assert_eq!(m.determinant().unwrap(), Rational::from(-3));
        assert_eq!(q(&[&[0, 0], &[0, 0]]).rank(), 0);
        assert_eq!(q(&[&[0, 1, 2], &[0, 2, 4], &[1, 0, 0]]).rank(), 2);
        assert!(q(&[&[1, 2]]).determinant().is_err());
    }

    #[test]
    fn kernel() {
        let m = q(&[&[1, 2, 3], &[4, 5, 6]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).unwrap().iter().all(Rational::is_zero));
        assert_eq!(k[0], vec![Rational::from(1), Rational::from(-2), Rational::from(1)]);
    }

    #[test]
    fn prime_field_rank_can_drop() {
        let f = PrimeField::new(7).unwrap();
        let m = Matrix::from_rows(f, vec![vec![1, 3], vec![2, 6]]).unwrap();
        assert_eq!(m.rank(), 1);
        let m = Matrix::from_rows(f, vec![vec![1, 1], vec![1, 8 % 7 + 1]]).unwrap();
        assert_eq!(m.rank(), 2);
    }
}
