use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use super::int::Int;
use crate::error::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "MatrixRepr", try_from = "MatrixRepr")]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Int>>,
}

impl From<IntMatrix> for MatrixRepr {
    fn from(m: IntMatrix) -> Self {
        MatrixRepr {
            rows: m.rows,
            cols: m.cols,
            entries: (0..m.rows).map(|r| m.row(r).to_vec()).collect(),
        }
    }
}

impl TryFrom<MatrixRepr> for IntMatrix {
    type Error = Error;
    fn try_from(r: MatrixRepr) -> Result<Self> {
        if r.entries.len() != r.rows || r.entries.iter().any(|row| row.len() != r.cols) {
            return Err(Error::Dimension(format!(
                "matrix declared {}x{} but entries disagree",
                r.rows, r.cols
            )));
        }
        Ok(IntMatrix {
            rows: r.rows,
            cols: r.cols,
            data: r.entries.into_iter().flatten().collect(),
        })
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    pub fn from_rows<T: Into<Int> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows
                .iter()
                .flat_map(|x| x.iter().cloned().map(Into::into))
                .collect(),
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(nrows: usize, cols: &[Vec<Int>]) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows);
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    /// Accepts `(row, col, value)` triplets; repeated positions are summed.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        entries: &[(usize, usize, Int)],
    ) -> Result<Self> {
        let mut m = Self::zeros(rows, cols);
        for (r, c, v) in entries {
            if *r >= rows || *c >= cols {
                return Err(Error::Dimension(format!(
                    "triplet ({r},{c}) outside {rows}x{cols}"
                )));
            }
            m[(*r, *c)] += v;
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Int::is_zero)
    }

    pub fn row(&self, r: usize) -> &[Int] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Int> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Int>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                let orow = other.row(k);
                let base = i * other.cols;
                for (j, b) in orow.iter().enumerate() {
                    if !b.is_zero() {
                        out.data[base + j].add_mul_assign(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(
            self.cols,
            v.len(),
            "dimension mismatch in matrix-vector product"
        );
        (0..self.rows)
            .map(|i| {
                let mut acc = Int::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc.add_mul_assign(a, b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, k: &Int) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * k).collect(),
        }
    }

    pub fn neg(&self) -> IntMatrix {
        self.scale(&Int::from(-1))
    }

    /// Sub-matrix with the given row and column indices.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m[(i, j)] = self[(r, c)].clone();
            }
        }
        m
    }

    pub fn select_columns(&self, cols: &[usize]) -> IntMatrix {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.select(&rows, cols)
    }

    pub fn select_rows(&self, rows: &[usize]) -> IntMatrix {
        let cols: Vec<usize> = (0..self.cols).collect();
        self.select(rows, &cols)
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let mut m = IntMatrix::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m[(r, c)] = self[(r, c)].clone();
            }
            for c in 0..other.cols {
                m[(r, self.cols + c)] = other[(r, c)].clone();
            }
        }
        m
    }

    /// `[self ; other]`.
    pub fn vconcat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &IntMatrix) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows + other.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, other);
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &IntMatrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self[(r0 + r, c0 + c)] = block[(r, c)].clone();
            }
        }
    }

    pub fn add_block(&mut self, r0: usize, c0: usize, block: &IntMatrix, k: &Int) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                let b = &block[(r, c)];
                if !b.is_zero() {
                    self.data[(r0 + r) * self.cols + c0 + c].add_mul_assign(k, b);
                }
            }
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// `row[dst] -= q * row[src]`.
    pub fn row_sub_mul(&mut self, dst: usize, src: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        assert_ne!(dst, src);
        let cols = self.cols;
        let (d0, s0) = (dst * cols, src * cols);
        let (lo, hi) = self.data.split_at_mut(d0.max(s0));
        let (drow, srow) = if d0 > s0 {
            (&mut hi[..cols], &lo[s0..s0 + cols])
        } else {
            (&mut lo[d0..d0 + cols], &hi[..cols])
        };
        for (dv, sv) in drow.iter_mut().zip(srow) {
            if !sv.is_zero() {
                dv.sub_mul_assign(q, sv);
            }
        }
    }

    /// `col[dst] -= q * col[src]`.
    pub fn col_sub_mul(&mut self, dst: usize, src: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let base = r * self.cols;
            if self.data[base + src].is_zero() {
                continue;
            }
            let s = self.data[base + src].clone();
            self.data[base + dst].sub_mul_assign(q, &s);
        }
    }

    pub fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -&self.data[r * self.cols + c];
            self.data[r * self.cols + c] = v;
        }
    }

    pub fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let v = -&self.data[r * self.cols + c];
            self.data[r * self.cols + c] = v;
        }
    }

    /// Replaces rows `(a, b)` by `(x·a + y·b, u·a + v·b)`.
    pub fn combine_rows(&mut self, a: usize, b: usize, x: &Int, y: &Int, u: &Int, v: &Int) {
        for c in 0..self.cols {
            let ra = self[(a, c)].clone();
            let rb = self[(b, c)].clone();
            if ra.is_zero() && rb.is_zero() {
                continue;
            }
            self[(a, c)] = &(x * &ra) + &(y * &rb);
            self[(b, c)] = &(u * &ra) + &(v * &rb);
        }
    }

    /// Replaces columns `(a, b)` by `(x·a + y·b, u·a + v·b)`.
    pub fn combine_cols(&mut self, a: usize, b: usize, x: &Int, y: &Int, u: &Int, v: &Int) {
        for r in 0..self.rows {
            let ca = self[(r, a)].clone();
            let cb = self[(r, b)].clone();
            if ca.is_zero() && cb.is_zero() {
                continue;
            }
            self[(r, a)] = &(x * &ca) + &(y * &cb);
            self[(r, b)] = &(u * &ca) + &(v * &cb);
        }
    }

    pub fn entries(&self) -> &[Int] {
        &self.data
    }

    /// Largest absolute entry, used in diagnostics.
    pub fn max_abs(&self) -> Int {
        self.data.iter().map(Int::abs).max().unwrap_or_default()
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Int {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Int {
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Dot product of integer vectors.
pub fn dot(a: &[Int], b: &[Int]) -> Int {
    let mut acc = Int::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc.add_mul_assign(x, y);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = IntMatrix::from_rows(&[vec![1i64, 2], vec![3, 4]]);
        let b = IntMatrix::from_rows(&[vec![0i64, 1], vec![1, 0]]);
        assert_eq!(
            a.mul(&b),
            IntMatrix::from_rows(&[vec![2i64, 1], vec![4, 3]])
        );
        assert_eq!(a.transpose().transpose(), a);
    }

    #[test]
    fn triplets_sum_and_reject_out_of_range() {
        let m = IntMatrix::from_triplets(2, 2, &[(0, 0, 1.into()), (0, 0, 2.into())]).unwrap();
        assert_eq!(m[(0, 0)], Int::from(3));
        assert!(IntMatrix::from_triplets(2, 2, &[(2, 0, 1.into())]).is_err());
    }

    #[test]
    fn row_ops_in_both_directions() {
        let mut m = IntMatrix::from_rows(&[vec![1i64, 2], vec![3, 4], vec![5, 6]]);
        m.row_sub_mul(2, 0, &Int::from(5));
        m.row_sub_mul(0, 1, &Int::from(1));
        assert_eq!(
            m,
            IntMatrix::from_rows(&[vec![-2i64, -2], vec![3, 4], vec![0, -4]])
        );
    }
}
