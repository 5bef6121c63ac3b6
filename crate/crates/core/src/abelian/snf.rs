//! Smith normal form over the integers.
//!
//! For an integer matrix `M` we compute unimodular `U`, `V` with `U*M*V = D`,
//! `D` diagonal, nonnegative, and `D[i][i] | D[i+1][i+1]`. The inverse of `U`
//! is tracked alongside, since presentations of subgroups need it.
//!
//! Pivoting is deterministic: the entry of smallest nonzero absolute value in
//! the remaining block, ties broken by lowest row then lowest column.

use super::matrix::IntMatrix;
use crate::error::Result;
use crate::scalar::{ext_gcd, IntScalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf<T: IntScalar> {
    pub u: IntMatrix<T>,
    pub u_inv: IntMatrix<T>,
    pub d: IntMatrix<T>,
    pub v: IntMatrix<T>,
    pub rank: usize,
}

impl<T: IntScalar> Snf<T> {
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)]).collect()
    }
}

struct Work<T> {
    d: IntMatrix<T>,
    u: IntMatrix<T>,
    u_inv: IntMatrix<T>,
    v: IntMatrix<T>,
}

impl<T: IntScalar> Work<T> {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
    }

    // row[dst] -= q * row[src]
    fn sub_row(&mut self, dst: usize, src: usize, q: T) -> Result<()> {
        let nq = q.neg_c()?;
        self.d.add_row_multiple(dst, src, nq)?;
        self.u.add_row_multiple(dst, src, nq)?;
        self.u_inv.add_col_multiple(src, dst, q)
    }

    // col[dst] -= q * col[src]
    fn sub_col(&mut self, dst: usize, src: usize, q: T) -> Result<()> {
        let nq = q.neg_c()?;
        self.d.add_col_multiple(dst, src, nq)?;
        self.v.add_col_multiple(dst, src, nq)
    }

    fn negate_row(&mut self, i: usize) -> Result<()> {
        self.d.negate_row(i)?;
        self.u.negate_row(i)?;
        self.u_inv.negate_col(i)
    }

    fn smallest_entry(&self, p: usize) -> Option<(usize, usize)> {
        let mut best: Option<(T, usize, usize)> = None;
        for i in p..self.d.rows() {
            for j in p..self.d.cols() {
                let x = self.d[(i, j)].abs();
                if x.is_zero() {
                    continue;
                }
                if best.map_or(true, |(b, _, _)| x < b) {
                    best = Some((x, i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    /// Turns diag(x, y) at positions (i, i), (j, j) into diag(gcd, lcm).
    fn fix_pair(&mut self, i: usize, j: usize) -> Result<()> {
        let a = self.d[(i, i)];
        let b = self.d[(j, j)];
        if b.is_zero() || (!a.is_zero() && (b % a).is_zero()) {
            return Ok(());
        }
        if a.is_zero() {
            // move the nonzero entry forward
            self.swap_rows(i, j);
            self.swap_cols(i, j);
            return Ok(());
        }
        let (g, s, t) = ext_gcd(a, b)?;
        let ag = a / g;
        let bg = b / g;
        let neg_bg = bg.neg_c()?;
        // L = [[s, t], [-b/g, a/g]], L^{-1} = [[a/g, -t], [b/g, s]]
        // R = [[1, -t*b/g], [1, s*a/g]]
        self.d.combine_rows(i, j, [s, t, neg_bg, ag])?;
        self.u.combine_rows(i, j, [s, t, neg_bg, ag])?;
        self.u_inv.combine_cols(i, j, [ag, t.neg_c()?, bg, s])?;
        let r = [T::one(), t.mul_c(bg)?.neg_c()?, T::one(), s.mul_c(ag)?];
        self.d.combine_cols(i, j, r)?;
        self.v.combine_cols(i, j, r)?;
        Ok(())
    }
}

/// Computes the Smith normal form of `m`, failing with [`Error::Overflow`]
/// instead of wrapping.
///
/// [`Error::Overflow`]: crate::error::Error::Overflow
pub fn smith_normal_form<T: IntScalar>(m: &IntMatrix<T>) -> Result<Snf<T>> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        d: m.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
    };
    let mut rank = 0;
    for p in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = w.smallest_entry(p) else {
                break;
            };
            w.swap_rows(p, pi);
            w.swap_cols(p, pj);
            let pivot = w.d[(p, p)];
            let mut clean = true;
            for i in p + 1..rows {
                let x = w.d[(i, p)];
                if !x.is_zero() {
                    w.sub_row(i, p, x / pivot)?;
                    clean &= w.d[(i, p)].is_zero();
                }
            }
            for j in p + 1..cols {
                let x = w.d[(p, j)];
                if !x.is_zero() {
                    w.sub_col(j, p, x / pivot)?;
                    clean &= w.d[(p, j)].is_zero();
                }
            }
            if clean {
                break;
            }
        }
        if w.d[(p, p)].is_zero() {
            break;
        }
        if w.d[(p, p)] < T::zero() {
            w.negate_row(p)?;
        }
        rank += 1;
    }
    // Divisibility chain. Zero entries are pushed to the end by fix_pair.
    let n = rows.min(cols);
    for i in 0..n {
        for j in i + 1..n {
            w.fix_pair(i, j)?;
        }
        if w.d[(i, i)] < T::zero() {
            w.negate_row(i)?;
        }
    }
    Ok(Snf { u: w.u, u_inv: w.u_inv, d: w.d, v: w.v, rank })
}
