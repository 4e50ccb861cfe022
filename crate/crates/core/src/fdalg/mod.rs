//! Finite-dimensional associative unital algebras given by structure constants.

pub(crate) mod hom;
mod matrix;
mod quiver;
mod radical;

use std::sync::Arc;

pub use hom::{HomReport, MatAlgebraHom};
pub use matrix::MatrixOverA;
pub use quiver::{Arrow, PathTerm, Quiver, Relation};
pub use radical::{local_matrix_rank, local_matrix_rank_of, radical_and_residue, Radical};

use crate::error::{Error, Result};
use crate::linal::Matrix;
use crate::scalar::{FieldSpec, Scalar};

/// Coordinates of an algebra element in the algebra's basis.
pub type Coords<F> = Vec<F>;

/// An associative unital algebra of dimension `m` over `F`.
///
/// `products[i * m + j]` holds the coordinates of `b_i b_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct FdAlgebra<F> {
    labels: Vec<String>,
    products: Vec<Coords<F>>,
    unit: Coords<F>,
    left: Vec<Matrix<F>>,
    right: Vec<Matrix<F>>,
}

impl<F: Scalar> FdAlgebra<F> {
    /// Builds and validates an algebra from sparse structure constants
    /// `(i, j, k, c)` meaning `b_i b_j` has coefficient `c` on `b_k`.
    pub fn from_structure_constants(
        labels: Vec<String>,
        unit: Coords<F>,
        triples: impl IntoIterator<Item = (usize, usize, usize, F)>,
    ) -> Result<Self> {
        let m = labels.len();
        let mut products = vec![vec![F::zero(); m]; m * m];
        for (i, j, k, c) in triples {
            if i >= m || j >= m || k >= m {
                return Err(Error::Shape(format!(
                    "structure constant index ({i},{j},{k}) out of range"
                )));
            }
            let slot = &mut products[i * m + j][k];
            *slot = slot.clone() + c;
        }
        Self::from_dense(labels, unit, products)
    }

    pub fn from_dense(
        labels: Vec<String>,
        unit: Coords<F>,
        products: Vec<Coords<F>>,
    ) -> Result<Self> {
        let m = labels.len();
        if m == 0 {
            return Err(Error::Shape("algebra of dimension zero".into()));
        }
        if unit.len() != m || products.len() != m * m || products.iter().any(|p| p.len() != m) {
            return Err(Error::Shape(
                "structure constant arrays have the wrong size".into(),
            ));
        }
        let (left, right) = regular_representations(m, &products);
        let alg = FdAlgebra {
            labels,
            products,
            unit,
            left,
            right,
        };
        alg.check_associative()?;
        alg.check_unit()?;
        Ok(alg)
    }

    fn check_associative(&self) -> Result<()> {
        let m = self.dim();
        for i in 0..m {
            for j in 0..m {
                let bij = &self.products[i * m + j];
                for k in 0..m {
                    let lhs = self.mul(bij, &self.basis(k));
                    let rhs = self.mul(&self.basis(i), &self.products[j * m + k]);
                    if lhs != rhs {
                        return Err(Error::NonAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_unit(&self) -> Result<()> {
        for i in 0..self.dim() {
            let b = self.basis(i);
            if self.mul(&self.unit, &b) != b {
                return Err(Error::BadUnit(format!(
                    "u * {} != {}",
                    self.labels[i], self.labels[i]
                )));
            }
            if self.mul(&b, &self.unit) != b {
                return Err(Error::BadUnit(format!(
                    "{} * u != {}",
                    self.labels[i], self.labels[i]
                )));
            }
        }
        Ok(())
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground() -> Self {
        Self::from_dense(vec!["1".into()], vec![F::one()], vec![vec![F::one()]])
            .expect("ground field is a valid algebra")
    }

    /// `k[x]/(x^2)`.
    pub fn dual_numbers() -> Self {
        let (o, z) = (F::one(), F::zero());
        Self::from_structure_constants(
            vec!["1".into(), "a".into()],
            vec![o.clone(), z],
            [(0, 0, 0, o.clone()), (0, 1, 1, o.clone()), (1, 0, 1, o)],
        )
        .expect("dual numbers are a valid algebra")
    }

    /// The full matrix algebra `M_n(k)` on the matrix units `E_ij`.
    pub fn matrix_algebra(n: usize) -> Self {
        let idx = |i: usize, j: usize| i * n + j;
        let labels = (0..n)
            .flat_map(|i| (0..n).map(move |j| format!("E{}{}", i + 1, j + 1)))
            .collect();
        let mut unit = vec![F::zero(); n * n];
        for i in 0..n {
            unit[idx(i, i)] = F::one();
        }
        let mut triples = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    triples.push((idx(i, j), idx(j, l), idx(i, l), F::one()));
                }
            }
        }
        Self::from_structure_constants(labels, unit, triples).expect("matrix units form an algebra")
    }

    pub fn field(&self) -> FieldSpec {
        F::field()
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn unit(&self) -> &Coords<F> {
        &self.unit
    }

    pub fn zero(&self) -> Coords<F> {
        vec![F::zero(); self.dim()]
    }

    pub fn basis(&self, i: usize) -> Coords<F> {
        let mut v = self.zero();
        v[i] = F::one();
        v
    }

    pub fn scalar(&self, c: F) -> Coords<F> {
        self.unit.iter().map(|u| u.clone() * c.clone()).collect()
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &Coords<F> {
        &self.products[i * self.dim() + j]
    }

    pub fn mul(&self, a: &[F], b: &[F]) -> Coords<F> {
        // a b = L(a) b
        self.left_mul(a).mul_vec(b)
    }

    pub fn add(&self, a: &[F], b: &[F]) -> Coords<F> {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.clone() + y.clone())
            .collect()
    }

    pub fn sub(&self, a: &[F], b: &[F]) -> Coords<F> {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.clone() - y.clone())
            .collect()
    }

    pub fn scale(&self, a: &[F], c: &F) -> Coords<F> {
        a.iter().map(|x| x.clone() * c.clone()).collect()
    }

    pub fn is_zero(&self, a: &[F]) -> bool {
        a.iter().all(|x| x.is_zero())
    }

    /// Matrix of `x -> a x` on coordinate columns.
    pub fn left_mul(&self, a: &[F]) -> Matrix<F> {
        combine(&self.left, a, self.dim())
    }

    /// Matrix of `x -> x a` on coordinate columns.
    pub fn right_mul(&self, a: &[F]) -> Matrix<F> {
        combine(&self.right, a, self.dim())
    }

    pub fn left_basis_mul(&self, i: usize) -> &Matrix<F> {
        &self.left[i]
    }

    pub fn right_basis_mul(&self, i: usize) -> &Matrix<F> {
        &self.right[i]
    }

    pub fn is_commutative(&self) -> bool {
        let m = self.dim();
        (0..m).all(|i| (0..m).all(|j| self.products[i * m + j] == self.products[j * m + i]))
    }

    pub fn into_shared(self) -> Arc<Self> {
        Arc::new(self)
    }

    /// Sparse structure constants `(i, j, k, c)` with `c != 0`.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, F)> {
        let m = self.dim();
        let mut out = Vec::new();
        for i in 0..m {
            for j in 0..m {
                for (k, c) in self.products[i * m + j].iter().enumerate() {
                    if !c.is_zero() {
                        out.push((i, j, k, c.clone()));
                    }
                }
            }
        }
        out
    }

    /// Human-readable form of an element, e.g. `e1 + 2*a2`.
    pub fn format_element(&self, a: &[F]) -> String {
        let terms: Vec<String> = a
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                if c.is_one() {
                    self.labels[i].clone()
                } else {
                    format!("{c}*{}", self.labels[i])
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// Whether two shared algebras are the same algebra.
pub fn same_algebra<F: Scalar>(a: &Arc<FdAlgebra<F>>, b: &Arc<FdAlgebra<F>>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn combine<F: Scalar>(mats: &[Matrix<F>], a: &[F], m: usize) -> Matrix<F> {
    let mut out = Matrix::zeros(m, m);
    for (i, c) in a.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        out = out.add(&mats[i].scale(c)).expect("same shape");
    }
    out
}

fn regular_representations<F: Scalar>(
    m: usize,
    products: &[Coords<F>],
) -> (Vec<Matrix<F>>, Vec<Matrix<F>>) {
    // L(b_i) e_j = b_i b_j ; R(b_i) e_j = b_j b_i
    let left = (0..m)
        .map(|i| Matrix::from_fn(m, m, |k, j| products[i * m + j][k].clone()))
        .collect();
    let right = (0..m)
        .map(|i| Matrix::from_fn(m, m, |k, j| products[j * m + i][k].clone()))
        .collect();
    (left, right)
}
