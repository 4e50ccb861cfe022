//! Jacobson radical via the trace form, residue algebra, and matrix rank over
//! local algebras.

use std::sync::Arc;

use super::{Coords, FdAlgebra, MatrixOverA};
use crate::error::{Error, Result};
use crate::linal::{independent_subset, Matrix};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Debug)]
pub struct Radical<F> {
    /// Basis of the radical, in coordinates of `A`.
    pub basis: Vec<Coords<F>>,
    /// `A / rad A` with basis the images of the listed basis elements of `A`.
    pub quotient: FdAlgebra<F>,
    /// Indices of the basis elements of `A` that map to the quotient basis.
    pub complement: Vec<usize>,
    /// Linear map `A -> A / rad A` (quotient dim x dim A).
    pub projection: Matrix<F>,
    /// The quotient is one-dimensional, i.e. `A` is local with residue field `k`.
    pub is_local: bool,
}

impl<F: Scalar> Radical<F> {
    pub fn project(&self, a: &[F]) -> Coords<F> {
        self.projection.mul_vec(a)
    }
}

/// Computes `rad A` as the radical of the trace form
/// `(x, y) -> tr(L_x L_y)`. Valid in characteristic 0 and in characteristic
/// `p > dim A`; other characteristics are refused.
pub fn radical_and_residue<F: Scalar>(a: &FdAlgebra<F>) -> Result<Radical<F>> {
    let m = a.dim();
    let p = F::field().characteristic();
    if p != 0 && p <= m as u64 {
        return Err(Error::UnsupportedCharacteristic { char: p, dim: m });
    }
    let trace = |x: &Matrix<F>| (0..m).fold(F::zero(), |acc, i| acc + x[(i, i)].clone());
    let form = Matrix::from_fn(m, m, |i, j| {
        let l = a
            .left_basis_mul(i)
            .mul(a.left_basis_mul(j))
            .expect("square");
        trace(&l)
    });
    // x in rad iff sum_i x_i T_ij = 0 for all j
    let basis = form.transpose().kernel_basis();

    check_nilpotent_ideal(a, &basis)?;

    let mut candidates = basis.clone();
    candidates.extend((0..m).map(|i| a.basis(i)));
    let chosen = independent_subset(m, &candidates);
    let complement: Vec<usize> = chosen
        .into_iter()
        .filter(|&c| c >= basis.len())
        .map(|c| c - basis.len())
        .collect();
    let full = Matrix::from_columns(m, &candidates_subset(a, &basis, &complement));
    let inv = full.inverse().expect("radical plus complement is a basis");
    let r = basis.len();
    let projection = Matrix::from_fn(complement.len(), m, |i, j| inv[(r + i, j)].clone());

    let qd = complement.len();
    let mut products = Vec::with_capacity(qd * qd);
    for &i in &complement {
        for &j in &complement {
            products.push(projection.mul_vec(a.basis_product(i, j)));
        }
    }
    let labels = complement.iter().map(|&i| a.labels()[i].clone()).collect();
    let unit = projection.mul_vec(a.unit());
    let quotient = FdAlgebra::from_dense(labels, unit, products)?;
    Ok(Radical {
        basis,
        quotient,
        complement,
        projection,
        is_local: qd == 1,
    })
}

fn candidates_subset<F: Scalar>(
    a: &FdAlgebra<F>,
    rad: &[Coords<F>],
    complement: &[usize],
) -> Vec<Coords<F>> {
    let mut v = rad.to_vec();
    v.extend(complement.iter().map(|&i| a.basis(i)));
    v
}

fn check_nilpotent_ideal<F: Scalar>(a: &FdAlgebra<F>, rad: &[Coords<F>]) -> Result<()> {
    if rad.is_empty() {
        return Ok(());
    }
    let m = a.dim();
    let span = Matrix::from_columns(m, rad);
    let r = span.rank();
    for x in rad {
        for i in 0..m {
            for y in [a.mul(&a.basis(i), x), a.mul(x, &a.basis(i))] {
                let ext = Matrix::hstack(&span, &Matrix::from_columns(m, &[y]))?;
                if ext.rank() != r {
                    return Err(Error::Precondition {
                        op: "radical_and_residue",
                        msg: "trace-form radical is not an ideal".into(),
                    });
                }
            }
        }
    }
    // rad^k spans shrink to zero within dim A steps
    let mut power: Vec<Coords<F>> = rad.to_vec();
    for _ in 0..=m {
        let mut next = Vec::new();
        for x in &power {
            for y in rad {
                let z = a.mul(x, y);
                if !a.is_zero(&z) {
                    next.push(z);
                }
            }
        }
        let keep = independent_subset(m, &next);
        power = keep.into_iter().map(|i| next[i].clone()).collect();
        if power.is_empty() {
            return Ok(());
        }
    }
    Err(Error::Precondition {
        op: "radical_and_residue",
        msg: "trace-form radical is not nilpotent".into(),
    })
}

/// Rank of a matrix over a local algebra: reduce entries to the residue field
/// and take the ordinary rank.
pub fn local_matrix_rank<F: Scalar>(rad: &Radical<F>, m: &MatrixOverA<F>) -> Result<Rational> {
    if !rad.is_local {
        return Err(Error::NotLocal);
    }
    if m.algebra().dim() != rad.projection.cols() {
        return Err(Error::AlgebraMismatch);
    }
    let reduced = Matrix::from_fn(m.rows(), m.cols(), |i, j| {
        rad.project(m.get(i, j))[0].clone()
    });
    Ok(Rational::from_integer(reduced.rank().into()))
}

/// Convenience wrapper computing the radical on the fly.
pub fn local_matrix_rank_of<F: Scalar>(
    a: &Arc<FdAlgebra<F>>,
    m: &MatrixOverA<F>,
) -> Result<Rational> {
    let rad = radical_and_residue(a)?;
    local_matrix_rank(&rad, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fdalg::tests::{q, two_cycle, Q};
    use crate::scalar::{rational, Fp};
    use num_traits::Zero;

    #[test]
    fn dual_numbers_are_local() {
        let a = FdAlgebra::<Q>::dual_numbers();
        let r = radical_and_residue(&a).unwrap();
        assert_eq!(r.basis.len(), 1);
        assert!(r.basis[0][0].is_zero());
        assert_eq!(r.quotient.dim(), 1);
        assert!(r.is_local);
    }

    #[test]
    fn matrix_algebra_is_semisimple() {
        let a = FdAlgebra::<Q>::matrix_algebra(2);
        let r = radical_and_residue(&a).unwrap();
        assert!(r.basis.is_empty());
        assert!(!r.is_local);
        assert_eq!(r.quotient.dim(), 4);
    }

    #[test]
    fn two_cycle_radical_is_the_arrows() {
        let a = two_cycle();
        let r = radical_and_residue(&a).unwrap();
        assert_eq!(r.basis.len(), 2);
        for x in &r.basis {
            assert!(x[0].is_zero() && x[1].is_zero());
        }
        assert_eq!(r.complement, vec![0, 1]);
        assert!(!r.is_local);
        // k x k: two orthogonal idempotents
        let e1 = r.quotient.basis(0);
        let e2 = r.quotient.basis(1);
        assert!(r.quotient.is_zero(&r.quotient.mul(&e1, &e2)));
        assert_eq!(r.quotient.mul(&e1, &e1), e1);
    }

    #[test]
    fn small_characteristic_is_refused() {
        let a = FdAlgebra::<Fp<2>>::dual_numbers();
        assert!(matches!(
            radical_and_residue(&a),
            Err(Error::UnsupportedCharacteristic { .. })
        ));
        let b = FdAlgebra::<Fp<5>>::dual_numbers();
        assert!(radical_and_residue(&b).unwrap().is_local);
    }

    #[test]
    fn local_rank_examples() {
        let a = Arc::new(FdAlgebra::<Q>::dual_numbers());
        let rad = radical_and_residue(&a).unwrap();
        let alpha = MatrixOverA::single(a.clone(), a.basis(1));
        assert_eq!(local_matrix_rank(&rad, &alpha).unwrap(), q(0));
        let one_plus = MatrixOverA::single(a.clone(), vec![q(1), q(1)]);
        assert_eq!(local_matrix_rank(&rad, &one_plus).unwrap(), q(1));
        assert_eq!(
            local_matrix_rank(&rad, &MatrixOverA::identity(a.clone(), 3)).unwrap(),
            rational(3, 1)
        );

        let b = Arc::new(two_cycle());
        assert!(matches!(
            local_matrix_rank_of(&b, &MatrixOverA::identity(b.clone(), 1)),
            Err(Error::NotLocal)
        ));
    }
}
