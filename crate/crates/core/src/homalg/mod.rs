//! Finite-dimensional modules over a finite-dimensional algebra: free hulls,
//! resolutions, tensor products and Tor.
//!
//! A module of dimension `v` stores one `v x v` matrix per basis element of
//! `A`. Right modules act on row vectors (`m . a = m R(a)`), left modules on
//! column vectors (`a . n = L(a) n`), so in both cases `act(a) act(b) = act(ab)`.

mod epi;
mod resolution;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use epi::{homological_epi_check, EpiReport};
pub use resolution::{
    free_hull, presentation, resolution, tor_dims, FreeHull, Presentation, Resolution,
};

use crate::error::{Error, Result};
use crate::fdalg::{same_algebra, FdAlgebra, MatAlgebraHom};
use crate::linal::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Right,
    Left,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Right => "right",
            Side::Left => "left",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FdModule<F> {
    algebra: Arc<FdAlgebra<F>>,
    side: Side,
    dim: usize,
    action: Vec<Matrix<F>>,
}

impl<F: Scalar> FdModule<F> {
    /// Validates that the action is unital and multiplicative.
    pub fn new(
        algebra: Arc<FdAlgebra<F>>,
        side: Side,
        dim: usize,
        action: Vec<Matrix<F>>,
    ) -> Result<Self> {
        let rep = MatAlgebraHom::new_unchecked(algebra.clone(), dim, action.clone());
        let report = rep.verify();
        if !report.is_valid() {
            return Err(Error::InvalidModule(report.violations.join("; ")));
        }
        Ok(FdModule {
            algebra,
            side,
            dim,
            action,
        })
    }

    pub(crate) fn from_parts_unchecked(
        algebra: Arc<FdAlgebra<F>>,
        side: Side,
        dim: usize,
        action: Vec<Matrix<F>>,
    ) -> Self {
        FdModule {
            algebra,
            side,
            dim,
            action,
        }
    }

    /// `A` as a module over itself.
    pub fn regular(algebra: Arc<FdAlgebra<F>>, side: Side) -> Self {
        let m = algebra.dim();
        let action = (0..m)
            .map(|i| match side {
                Side::Right => algebra.right_basis_mul(i).transpose(),
                Side::Left => algebra.left_basis_mul(i).clone(),
            })
            .collect();
        FdModule {
            algebra,
            side,
            dim: m,
            action,
        }
    }

    pub fn algebra(&self) -> &Arc<FdAlgebra<F>> {
        &self.algebra
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[Matrix<F>] {
        &self.action
    }

    /// The matrix of an arbitrary algebra element.
    pub fn act(&self, a: &[F]) -> Matrix<F> {
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (c, m) in a.iter().zip(&self.action) {
            if !c.is_zero() {
                out = out.add(&m.scale(c)).expect("square");
            }
        }
        out
    }

    pub fn direct_sum(&self, o: &Self) -> Result<Self> {
        if !same_algebra(&self.algebra, &o.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        if self.side != o.side {
            return Err(Error::InvalidModule(
                "direct sum of a right and a left module".into(),
            ));
        }
        let action = self
            .action
            .iter()
            .zip(&o.action)
            .map(|(x, y)| Matrix::block_diag(x, y))
            .collect();
        Ok(FdModule {
            algebra: self.algebra.clone(),
            side: self.side,
            dim: self.dim + o.dim,
            action,
        })
    }
}

/// `M_n(K)` as a right or left `A`-module through `phi`, on the matrix units
/// `E_rc` in row-major order.
pub fn module_from_hom<F: Scalar>(phi: &MatAlgebraHom<F>, side: Side) -> FdModule<F> {
    let n = phi.n();
    let idx = |r: usize, c: usize| r * n + c;
    let action = phi
        .images()
        .iter()
        .map(|p| {
            let mut out = Matrix::zeros(n * n, n * n);
            for r in 0..n {
                for c in 0..n {
                    for s in 0..n {
                        match side {
                            // E_rc p = sum_s p_cs E_rs
                            Side::Right => out[(idx(r, c), idx(r, s))] = p[(c, s)].clone(),
                            // p E_rc = sum_s p_sr E_sc
                            Side::Left => out[(idx(s, c), idx(r, c))] = p[(s, r)].clone(),
                        }
                    }
                }
            }
            out
        })
        .collect();
    FdModule::from_parts_unchecked(phi.source().clone(), side, n * n, action)
}

fn check_pair<F: Scalar>(m: &FdModule<F>, n: &FdModule<F>) -> Result<()> {
    if !same_algebra(&m.algebra, &n.algebra) {
        return Err(Error::AlgebraMismatch);
    }
    if m.side != Side::Right || n.side != Side::Left {
        return Err(Error::InvalidModule(format!(
            "tensor needs a right and a left module, got {} and {}",
            m.side, n.side
        )));
    }
    Ok(())
}

/// Relations `(m_i b) (x) n_j - m_i (x) (b n_j)` as rows over `M (x)_k N`.
fn tensor_relations<F: Scalar>(m: &FdModule<F>, n: &FdModule<F>) -> Matrix<F> {
    let (v, w) = (m.dim, n.dim);
    let mut rows = Vec::new();
    for (r, l) in m.action.iter().zip(&n.action) {
        for i in 0..v {
            for j in 0..w {
                let mut rel = vec![F::zero(); v * w];
                for k in 0..v {
                    rel[k * w + j] = rel[k * w + j].clone() + r[(i, k)].clone();
                }
                for t in 0..w {
                    rel[i * w + t] = rel[i * w + t].clone() - l[(t, j)].clone();
                }
                if rel.iter().any(|x| !x.is_zero()) {
                    rows.push(rel);
                }
            }
        }
    }
    if rows.is_empty() {
        return Matrix::zeros(0, v * w);
    }
    Matrix::from_rows(rows).expect("rows have equal length")
}

/// `dim_k (M (x)_A N)`.
pub fn tensor_dim<F: Scalar>(m: &FdModule<F>, n: &FdModule<F>) -> Result<usize> {
    check_pair(m, n)?;
    Ok(m.dim * n.dim - tensor_relations(m, n).rank())
}

/// Whether `x (x) y -> xy` induces a bijection `B (x)_A B -> B` for `B = M_n(K)`.
pub(crate) fn multiplication_is_bijective<F: Scalar>(
    phi: &MatAlgebraHom<F>,
) -> Result<(usize, bool)> {
    let right = module_from_hom(phi, Side::Right);
    let left = module_from_hom(phi, Side::Left);
    let t = tensor_dim(&right, &left)?;
    let n = phi.n();
    let dim_b = n * n;
    // multiplication B (x)_k B -> B: E_rc (x) E_st -> delta_cs E_rt
    let mut mu = Matrix::zeros(dim_b, dim_b * dim_b);
    for r in 0..n {
        for c in 0..n {
            for t2 in 0..n {
                mu[(r * n + t2, (r * n + c) * dim_b + c * n + t2)] = F::one();
            }
        }
    }
    Ok((t, t == dim_b && mu.rank() == dim_b))
}
