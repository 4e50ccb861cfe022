use std::fmt;
use std::sync::Arc;

use super::{same_algebra, Coords, FdAlgebra, MatAlgebraHom};
use crate::error::{Error, Result};
use crate::linal::Matrix;
use crate::scalar::Scalar;

/// A matrix with entries in a finite-dimensional algebra `A`.
///
/// A `b x a` matrix `F` is the homomorphism of free right modules
/// `A^a -> A^b, x -> F x` (column vectors, left multiplication), so the
/// composite "first `F`, then `G`" is the product `G F`.
#[derive(Clone, PartialEq)]
pub struct MatrixOverA<F> {
    algebra: Arc<FdAlgebra<F>>,
    rows: usize,
    cols: usize,
    entries: Vec<Coords<F>>,
}

impl<F: Scalar> MatrixOverA<F> {
    pub fn zeros(algebra: Arc<FdAlgebra<F>>, rows: usize, cols: usize) -> Self {
        let z = algebra.zero();
        MatrixOverA {
            algebra,
            rows,
            cols,
            entries: vec![z; rows * cols],
        }
    }

    pub fn identity(algebra: Arc<FdAlgebra<F>>, n: usize) -> Self {
        let mut m = Self::zeros(algebra, n, n);
        for i in 0..n {
            m.set(i, i, m.algebra.unit().clone());
        }
        m
    }

    /// `c * I` for a scalar of the ground field.
    pub fn scalar_identity(algebra: Arc<FdAlgebra<F>>, n: usize, c: F) -> Self {
        Self::identity(algebra, n).scale(&c)
    }

    pub fn from_entries(
        algebra: Arc<FdAlgebra<F>>,
        rows: usize,
        cols: usize,
        entries: Vec<Coords<F>>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|e| e.len() != algebra.dim()) {
            return Err(Error::Shape(
                "entry coordinate vector has the wrong length".into(),
            ));
        }
        Ok(MatrixOverA {
            algebra,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_fn(
        algebra: Arc<FdAlgebra<F>>,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Coords<F>,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        MatrixOverA {
            algebra,
            rows,
            cols,
            entries,
        }
    }

    /// `1 x 1` matrix holding a single element.
    pub fn single(algebra: Arc<FdAlgebra<F>>, a: Coords<F>) -> Self {
        MatrixOverA {
            algebra,
            rows: 1,
            cols: 1,
            entries: vec![a],
        }
    }

    pub fn algebra(&self) -> &Arc<FdAlgebra<F>> {
        &self.algebra
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Coords<F> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, a: Coords<F>) {
        self.entries[i * self.cols + j] = a;
    }

    pub fn entries(&self) -> &[Coords<F>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.iter().all(|c| c.is_zero()))
    }

    fn check_same(&self, o: &Self) -> Result<()> {
        if !same_algebra(&self.algebra, &o.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    /// Matrix product `self * o` (apply `o` first).
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check_same(o)?;
        if self.cols != o.rows {
            return Err(Error::Shape(format!(
                "cannot compose {}x{} after {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let a = &self.algebra;
        let mut out = Self::zeros(a.clone(), self.rows, o.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let x = self.get(i, l);
                if a.is_zero(x) {
                    continue;
                }
                let lx = a.left_mul(x);
                for j in 0..o.cols {
                    let y = o.get(l, j);
                    if a.is_zero(y) {
                        continue;
                    }
                    let prod = lx.mul_vec(y);
                    let acc = a.add(out.get(i, j), &prod);
                    out.set(i, j, acc);
                }
            }
        }
        Ok(out)
    }

    fn zip_with(
        &self,
        o: &Self,
        f: impl Fn(&FdAlgebra<F>, &[F], &[F]) -> Coords<F>,
    ) -> Result<Self> {
        self.check_same(o)?;
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&o.entries)
            .map(|(x, y)| f(&self.algebra, x, y))
            .collect();
        Ok(MatrixOverA {
            algebra: self.algebra.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.zip_with(o, |a, x, y| a.add(x, y))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.zip_with(o, |a, x, y| a.sub(x, y))
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn scale(&self, c: &F) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|e| self.algebra.scale(e, c))
            .collect();
        MatrixOverA {
            algebra: self.algebra.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn blocks(algebra: &Arc<FdAlgebra<F>>, grid: &[Vec<Self>]) -> Result<Self> {
        if grid.is_empty() {
            return Ok(Self::zeros(algebra.clone(), 0, 0));
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
                if !same_algebra(algebra, &b.algebra) {
                    return Err(Error::AlgebraMismatch);
                }
                if b.rows != heights[bi] || b.cols != widths[bj] {
                    return Err(Error::Shape(format!(
                        "block ({bi},{bj}) has the wrong shape"
                    )));
                }
            }
        }
        let rows = heights.iter().sum();
        let cols = widths.iter().sum();
        let mut out = Self::zeros(algebra.clone(), rows, cols);
        let mut r0 = 0;
        for (bi, row) in grid.iter().enumerate() {
            let mut c0 = 0;
            for (bj, b) in row.iter().enumerate() {
                for i in 0..b.rows {
                    for j in 0..b.cols {
                        out.set(r0 + i, c0 + j, b.get(i, j).clone());
                    }
                }
                c0 += widths[bj];
            }
            r0 += heights[bi];
        }
        Ok(out)
    }

    pub fn block_diag(a: &Self, b: &Self) -> Result<Self> {
        let alg = a.algebra.clone();
        Self::blocks(
            &alg,
            &[
                vec![a.clone(), Self::zeros(alg.clone(), a.rows, b.cols)],
                vec![Self::zeros(alg.clone(), b.rows, a.cols), b.clone()],
            ],
        )
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(self.algebra.clone(), rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    /// The ground-field matrix of `x -> F x` on `A^a` viewed as a `k`-space of
    /// dimension `a * dim A` (blocks `L(F_ij)`).
    pub fn to_ground(&self) -> Matrix<F> {
        let m = self.algebra.dim();
        let mut out = Matrix::zeros(self.rows * m, self.cols * m);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                if self.algebra.is_zero(e) {
                    continue;
                }
                let l = self.algebra.left_mul(e);
                for r in 0..m {
                    for c in 0..m {
                        out[(i * m + r, j * m + c)] = l[(r, c)].clone();
                    }
                }
            }
        }
        out
    }

    /// Entrywise image under `phi`: the `(rows n) x (cols n)` block matrix
    /// `[phi(F_ij)]` over the target field.
    pub fn base_change(&self, phi: &MatAlgebraHom<F>) -> Result<Matrix<F>> {
        if !same_algebra(&self.algebra, phi.source()) {
            return Err(Error::AlgebraMismatch);
        }
        let n = phi.n();
        let mut out = Matrix::zeros(self.rows * n, self.cols * n);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let img = phi.apply(self.get(i, j));
                for r in 0..n {
                    for c in 0..n {
                        out[(i * n + r, j * n + c)] = img[(r, c)].clone();
                    }
                }
            }
        }
        Ok(out)
    }
}

impl<F: Scalar> fmt::Display for MatrixOverA<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.algebra.format_element(self.get(i, j)))?;
            }
        }
        write!(f, "] ({}x{})", self.rows, self.cols)
    }
}

impl<F: fmt::Debug> fmt::Debug for MatrixOverA<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MatrixOverA")
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field("entries", &self.entries)
            .finish()
    }
}
