//! Dense exact linear algebra over a [`Scalar`] field.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Scalar> Matrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, cols: &[Vec<F>]) -> Self {
        Self::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(l, j)];
                    if !b.is_zero() {
                        let v = out[(i, j)].clone() + a.clone() * b.clone();
                        out[(i, j)] = v;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    fn zip_with(&self, o: &Self, f: impl Fn(&F, &F) -> F) -> Result<Self> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.zip_with(o, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.zip_with(o, |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, s: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * s.clone()).collect(),
        }
    }

    /// Block matrix from a grid of blocks; every block row shares its height
    /// and every block column its width.
    pub fn blocks(grid: &[Vec<Self>]) -> Result<Self> {
        if grid.is_empty() {
            return Ok(Self::zeros(0, 0));
        }
        let heights: Vec<usize> = grid
            .iter()
            .map(|r| r.first().map_or(0, |b| b.rows))
            .collect();
        let widths: Vec<usize> = grid[0].iter().map(|b| b.cols).collect();
        for (bi, row) in grid.iter().enumerate() {
            if row.len() != widths.len() {
                return Err(Error::Shape("ragged block grid".into()));
            }
            for (bj, b) in row.iter().enumerate() {
                if b.rows != heights[bi] || b.cols != widths[bj] {
                    return Err(Error::Shape(format!(
                        "block ({bi},{bj}) has the wrong shape"
                    )));
                }
            }
        }
        let rows = heights.iter().sum();
        let cols = widths.iter().sum();
        let mut out = Self::zeros(rows, cols);
        let mut r0 = 0;
        for (bi, row) in grid.iter().enumerate() {
            let mut c0 = 0;
            for (bj, b) in row.iter().enumerate() {
                for i in 0..b.rows {
                    for j in 0..b.cols {
                        out[(r0 + i, c0 + j)] = b[(i, j)].clone();
                    }
                }
                c0 += widths[bj];
            }
            r0 += heights[bi];
        }
        Ok(out)
    }

    pub fn block_diag(a: &Self, b: &Self) -> Self {
        Self::blocks(&[
            vec![a.clone(), Self::zeros(a.rows, b.cols)],
            vec![Self::zeros(b.rows, a.cols), b.clone()],
        ])
        .expect("block diagonal shapes are consistent")
    }

    pub fn hstack(a: &Self, b: &Self) -> Result<Self> {
        Self::blocks(&[vec![a.clone(), b.clone()]])
    }

    pub fn vstack(a: &Self, b: &Self) -> Result<Self> {
        Self::blocks(&[vec![a.clone()], vec![b.clone()]])
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| {
            self[(rows[i], cols[j])].clone()
        })
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv();
            for j in c..m.cols {
                let v = m[(r, j)].clone() * inv.clone();
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let v = m[(i, j)].clone() - factor.clone() * m[(r, j)].clone();
                    m[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        // Eliminate along the shorter side.
        if self.rows > self.cols {
            return self.transpose().rank();
        }
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv();
            for i in r + 1..m.rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone() * inv.clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let v = m[(i, j)].clone() - factor.clone() * m[(r, j)].clone();
                    m[(i, j)] = v;
                }
            }
            r += 1;
        }
        r
    }

    /// Basis of the right null space `{x : M x = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r[(i, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Coefficients `x` with `M x = v`, if `v` lies in the column span.
    pub fn solve_in_span(&self, v: &[F]) -> Option<Vec<F>> {
        assert_eq!(v.len(), self.rows, "solve_in_span: vector length");
        let aug = Self::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                v[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r[(i, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = Self::hstack(self, &Self::identity(n)).ok()?;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
    }
}

/// Indices of a maximal linearly independent subset of `vectors`, chosen
/// greedily in order.
pub fn independent_subset<F: Scalar>(dim: usize, vectors: &[Vec<F>]) -> Vec<usize> {
    let m = Matrix::from_columns(dim, vectors);
    m.rref().1
}

/// Coordinates of `v` with respect to the columns of `basis`, which must be
/// independent and span a space containing `v`.
pub fn coordinates<F: Scalar>(basis: &Matrix<F>, v: &[F]) -> Option<Vec<F>> {
    basis.solve_in_span(v)
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<F: fmt::Display> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matrix")
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field("data", &self.data)
            .finish()
    }
}
