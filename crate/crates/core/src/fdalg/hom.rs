use std::sync::Arc;

use serde::Serialize;

use super::FdAlgebra;
use crate::error::{Error, Result};
use crate::linal::Matrix;
use crate::scalar::Scalar;

/// An algebra homomorphism `A -> M_n(K)`, given on the basis of `A`.
///
/// The target field is the ground field of `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatAlgebraHom<F> {
    source: Arc<FdAlgebra<F>>,
    n: usize,
    images: Vec<Matrix<F>>,
}

/// Violated multiplicativity or unitality constraints; empty iff valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HomReport {
    pub violations: Vec<String>,
}

impl HomReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl<F: Scalar> MatAlgebraHom<F> {
    /// Unchecked constructor; see [`MatAlgebraHom::verify`].
    pub fn new_unchecked(source: Arc<FdAlgebra<F>>, n: usize, images: Vec<Matrix<F>>) -> Self {
        MatAlgebraHom { source, n, images }
    }

    pub fn new(source: Arc<FdAlgebra<F>>, n: usize, images: Vec<Matrix<F>>) -> Result<Self> {
        let h = Self::new_unchecked(source, n, images);
        let report = h.verify();
        if !report.is_valid() {
            return Err(Error::InvalidHom(report.violations.join("; ")));
        }
        Ok(h)
    }

    /// Identity `k -> M_1(k)` on the ground field.
    pub fn identity_on_ground() -> Self {
        let k = Arc::new(FdAlgebra::ground());
        Self::new(k, 1, vec![Matrix::identity(1)]).expect("identity is a homomorphism")
    }

    pub fn source(&self) -> &Arc<FdAlgebra<F>> {
        &self.source
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn images(&self) -> &[Matrix<F>] {
        &self.images
    }

    /// `phi(a)` for an element given in coordinates.
    pub fn apply(&self, a: &[F]) -> Matrix<F> {
        let mut out = Matrix::zeros(self.n, self.n);
        for (c, img) in a.iter().zip(&self.images) {
            if !c.is_zero() {
                out = out.add(&img.scale(c)).expect("images are n x n");
            }
        }
        out
    }

    /// Lists every violated constraint: image shapes, `phi(1) = I`, and
    /// `phi(b_i) phi(b_j) = phi(b_i b_j)` for all basis pairs.
    pub fn verify(&self) -> HomReport {
        let a = &self.source;
        let labels = a.labels();
        let mut violations = Vec::new();
        if self.images.len() != a.dim() {
            violations.push(format!(
                "{} images for an algebra of dimension {}",
                self.images.len(),
                a.dim()
            ));
            return HomReport { violations };
        }
        for (l, img) in labels.iter().zip(&self.images) {
            if img.rows() != self.n || img.cols() != self.n {
                violations.push(format!(
                    "image of {l} is {}x{}, expected {}x{}",
                    img.rows(),
                    img.cols(),
                    self.n,
                    self.n
                ));
            }
        }
        if !violations.is_empty() {
            return HomReport { violations };
        }
        if self.apply(a.unit()) != Matrix::identity(self.n) {
            violations.push("phi(1) is not the identity".into());
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let lhs = self.images[i].mul(&self.images[j]).expect("square");
                let rhs = self.apply(a.basis_product(i, j));
                if lhs != rhs {
                    violations.push(format!(
                        "phi({}) phi({}) != phi({} {})",
                        labels[i], labels[j], labels[i], labels[j]
                    ));
                }
            }
        }
        HomReport { violations }
    }
}
