use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::IntScalar;

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: IntScalar> IntMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Result<Self> {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(IntMatrix { rows: r, cols, data })
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_cols(cols: &[Vec<T>], rows: usize) -> Result<Self> {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::Dimension(format!(
                    "column {j} has {} entries, expected {rows}",
                    col.len()
                )));
            }
            for (i, &x) in col.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a.mul_c(rhs[(k, j)])?;
                    out[(i, j)] = out[(i, j)].add_c(prod)?;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if self.cols != v.len() {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .try_fold(T::zero(), |acc, (&a, &b)| acc.add_c(a.mul_c(b)?))
            })
            .collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    /// Converts every entry to another scalar type, failing on overflow.
    pub fn cast<U: IntScalar>(&self) -> Result<IntMatrix<U>> {
        let data = self
            .data
            .iter()
            .map(|&x| U::from(x).ok_or(Error::Overflow))
            .collect::<Result<Vec<U>>>()?;
        Ok(IntMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, k: T) -> Result<()> {
        for j in 0..self.cols {
            let v = self[(dst, j)].add_c(k.mul_c(self[(src, j)])?)?;
            self[(dst, j)] = v;
        }
        Ok(())
    }

    /// col[dst] += k * col[src]
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, k: T) -> Result<()> {
        for i in 0..self.rows {
            let v = self[(i, dst)].add_c(k.mul_c(self[(i, src)])?)?;
            self[(i, dst)] = v;
        }
        Ok(())
    }

    pub(crate) fn negate_row(&mut self, i: usize) -> Result<()> {
        for j in 0..self.cols {
            self[(i, j)] = self[(i, j)].neg_c()?;
        }
        Ok(())
    }

    pub(crate) fn negate_col(&mut self, j: usize) -> Result<()> {
        for i in 0..self.rows {
            self[(i, j)] = self[(i, j)].neg_c()?;
        }
        Ok(())
    }

    /// Replaces rows (a, b) by [[p, q], [r, s]] * (row a, row b).
    pub(crate) fn combine_rows(&mut self, a: usize, b: usize, coef: [T; 4]) -> Result<()> {
        let [p, q, r, s] = coef;
        for j in 0..self.cols {
            let x = self[(a, j)];
            let y = self[(b, j)];
            self[(a, j)] = p.mul_c(x)?.add_c(q.mul_c(y)?)?;
            self[(b, j)] = r.mul_c(x)?.add_c(s.mul_c(y)?)?;
        }
        Ok(())
    }

    /// Replaces columns (a, b) by (col a, col b) * [[p, q], [r, s]].
    pub(crate) fn combine_cols(&mut self, a: usize, b: usize, coef: [T; 4]) -> Result<()> {
        let [p, q, r, s] = coef;
        for i in 0..self.rows {
            let x = self[(i, a)];
            let y = self[(i, b)];
            self[(i, a)] = x.mul_c(p)?.add_c(y.mul_c(r)?)?;
            self[(i, b)] = x.mul_c(q)?.add_c(y.mul_c(s)?)?;
        }
        Ok(())
    }
}

impl<T> std::ops::Index<(usize, usize)> for IntMatrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for IntMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Debug for IntMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
