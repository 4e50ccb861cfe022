use std::collections::BTreeMap;

use super::ValidationReport;
use crate::linal::Matrix;
use crate::scalar::Scalar;

/// A bounded complex of finite-dimensional vector spaces over the ground
/// field, `d_n : K^{dim_n} -> K^{dim_{n-1}}`.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldComplex<F> {
    dims: BTreeMap<i64, usize>,
    diffs: BTreeMap<i64, Matrix<F>>,
}

impl<F: Scalar> FieldComplex<F> {
    pub fn from_parts_unchecked(
        dims: impl IntoIterator<Item = (i64, usize)>,
        diffs: impl IntoIterator<Item = (i64, Matrix<F>)>,
    ) -> Self {
        FieldComplex {
            dims: dims.into_iter().filter(|&(_, r)| r > 0).collect(),
            diffs: diffs.into_iter().filter(|(_, d)| !d.is_zero()).collect(),
        }
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    pub fn dim(&self, n: i64) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    pub fn differentials(&self) -> &BTreeMap<i64, Matrix<F>> {
        &self.diffs
    }

    pub fn differential(&self, n: i64) -> Matrix<F> {
        self.diffs
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.dim(n - 1), self.dim(n)))
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for (&n, d) in &self.diffs {
            if d.rows() != self.dim(n - 1) || d.cols() != self.dim(n) {
                violations.push(format!(
                    "d_{n} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    self.dim(n - 1),
                    self.dim(n)
                ));
            }
        }
        if violations.is_empty() {
            for (&n, d) in &self.diffs {
                if let Some(lower) = self.diffs.get(&(n - 1)) {
                    if !lower.mul(d).expect("shapes checked").is_zero() {
                        violations.push(format!("d_{} d_{n} != 0", n - 1));
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    /// `dim H_n = dim_n - rank d_n - rank d_{n+1}` over the support.
    pub fn homology_dims(&self) -> BTreeMap<i64, usize> {
        let ranks: BTreeMap<i64, usize> = self.diffs.iter().map(|(&n, d)| (n, d.rank())).collect();
        self.dims
            .iter()
            .map(|(&n, &v)| {
                let r =
                    ranks.get(&n).copied().unwrap_or(0) + ranks.get(&(n + 1)).copied().unwrap_or(0);
                (n, v - r)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fdalg::tests::{q, Q};

    #[test]
    fn homology_of_zero_differential() {
        let x = FieldComplex::<Q>::from_parts_unchecked([(1, 1), (0, 1)], []);
        assert_eq!(x.homology_dims(), BTreeMap::from([(0, 1), (1, 1)]));
        let one = Matrix::from_rows(vec![vec![q(1)]]).unwrap();
        let c = FieldComplex::from_parts_unchecked([(1, 1), (0, 1)], [(1, one)]);
        assert!(c.validate().is_valid());
        assert_eq!(c.homology_dims().values().sum::<usize>(), 0);
    }
}
