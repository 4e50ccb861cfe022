use serde::Serialize;

use super::SylvesterRank;
use crate::error::Result;
use crate::fdalg::MatrixOverA;
use crate::linal::Matrix;
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessSource {
    /// A square submatrix of `F` itself.
    OverA,
    /// A square submatrix of the base-changed matrix `Phi(F)` over `K`.
    BaseChanged,
}

/// A square submatrix `N` with the same rank as the whole matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SubmatrixWitness<F> {
    pub source: WitnessSource,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    /// `rho(N) = rho(F)`.
    pub rank: Rational,
    pub over_a: Option<MatrixOverA<F>>,
    pub base_changed: Option<Matrix<F>>,
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Searches for a square `rho`-full submatrix. When `rho(F)` is an integer `k`
/// every `k x k` submatrix of `F` is tried; otherwise, or when none of them
/// attains the rank, a maximal invertible submatrix of `Phi(F)` is returned.
pub fn full_square_submatrix<F: Scalar>(
    sigma: &SylvesterRank<F>,
    f: &MatrixOverA<F>,
) -> Result<SubmatrixWitness<F>> {
    let rho = sigma.sylvester_morphism_rank(f)?;
    if rho.is_integer() {
        let k: usize = rho
            .to_integer()
            .try_into()
            .expect("rank is a nonnegative integer");
        for rows in subsets(f.rows(), k) {
            for cols in subsets(f.cols(), k) {
                let n = f.submatrix(&rows, &cols);
                if sigma.sylvester_morphism_rank(&n)? == rho {
                    return Ok(SubmatrixWitness {
                        source: WitnessSource::OverA,
                        rows,
                        cols,
                        rank: rho,
                        over_a: Some(n),
                        base_changed: None,
                    });
                }
            }
        }
    }
    let phi = f.base_change(sigma.hom())?;
    let (_, rows) = phi.transpose().rref();
    let (_, cols) = phi
        .submatrix(&rows, &(0..phi.cols()).collect::<Vec<_>>())
        .rref();
    let n = phi.submatrix(&rows, &cols);
    debug_assert_eq!(n.rank(), phi.rank());
    debug_assert_eq!(n.rows(), n.cols());
    Ok(SubmatrixWitness {
        source: WitnessSource::BaseChanged,
        rows,
        cols,
        rank: rho,
        over_a: None,
        base_changed: Some(n),
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fdalg::hom::tests::{augmentation, loc_m2};
    use crate::fdalg::tests::{two_cycle, Q};
    use crate::fdalg::{FdAlgebra, MatAlgebraHom};
    use crate::scalar::rational;

    fn ground() -> (Arc<FdAlgebra<Q>>, SylvesterRank<Q>) {
        let k = MatAlgebraHom::<Q>::identity_on_ground();
        (k.source().clone(), SylvesterRank::new(k).unwrap())
    }

    fn over_k(a: &Arc<FdAlgebra<Q>>, rows: &[&[i64]]) -> MatrixOverA<Q> {
        let r = rows.len();
        let c = rows[0].len();
        MatrixOverA::from_fn(a.clone(), r, c, |i, j| vec![rational(rows[i][j], 1)])
    }

    #[test]
    fn subsets_count() {
        assert_eq!(subsets(5, 2).len(), 10);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
    }

    #[test]
    fn identity_is_its_own_witness() {
        let (a, s) = ground();
        let w = full_square_submatrix(&s, &MatrixOverA::identity(a, 2)).unwrap();
        assert_eq!(w.source, WitnessSource::OverA);
        assert_eq!((w.rows, w.cols), (vec![0, 1], vec![0, 1]));
    }

    #[test]
    fn rank_one_block() {
        let (a, s) = ground();
        let w = full_square_submatrix(&s, &over_k(&a, &[&[1, 1], &[1, 1]])).unwrap();
        assert_eq!(w.rank, rational(1, 1));
        assert_eq!(w.rows.len(), 1);
    }

    #[test]
    fn base_change_fallback() {
        let a = Arc::new(two_cycle());
        let s = SylvesterRank::new(loc_m2(a.clone())).unwrap();
        let mut f = MatrixOverA::zeros(a.clone(), 2, 2);
        f.set(0, 0, a.basis(0));
        f.set(0, 1, a.basis(3));
        f.set(1, 1, a.basis(1));
        // rank 1, but every entry has rank 1/2
        let w = full_square_submatrix(&s, &f).unwrap();
        assert_eq!(w.rank, rational(1, 1));
        assert_eq!(w.source, WitnessSource::BaseChanged);
        assert_eq!(w.base_changed.unwrap().rank(), 2);

        let w = full_square_submatrix(&s, &MatrixOverA::single(a.clone(), a.basis(3))).unwrap();
        assert_eq!(w.rank, rational(1, 2));
        assert_eq!(w.base_changed.unwrap(), Matrix::identity(1));
    }

    #[test]
    fn integral_rank_without_witness_over_a() {
        // [e1 e2] has rank 1 but each entry has rank 1/2
        let a = Arc::new(two_cycle());
        let s = SylvesterRank::new(loc_m2(a.clone())).unwrap();
        let mut f = MatrixOverA::zeros(a.clone(), 1, 2);
        f.set(0, 0, a.basis(0));
        f.set(0, 1, a.basis(1));
        let w = full_square_submatrix(&s, &f).unwrap();
        assert_eq!(w.source, WitnessSource::BaseChanged);
        assert_eq!(w.base_changed.unwrap().rank(), 2);

        let aug = SylvesterRank::new(augmentation(a.clone())).unwrap();
        let w = full_square_submatrix(&aug, &f).unwrap();
        assert_eq!(w.source, WitnessSource::OverA);
        assert_eq!(w.cols, vec![0]);
    }
}
