//! Bounded complexes of finite-rank free modules over a finite-dimensional
//! algebra, chain maps between them, and the triangle constructors.
//!
//! Grading is homological: `d_n : X_n -> X_{n-1}`, stored as an
//! `r_{n-1} x r_n` matrix over `A` acting on column vectors. Shifting by `k`
//! sends `X_n` to degree `n + k` and multiplies every differential by `(-1)^k`.

mod chain;
mod field;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;

pub use chain::{ChainMap, Cone, IdempotentObject};
pub use field::FieldComplex;

use crate::error::{Error, Result};
use crate::fdalg::{same_algebra, FdAlgebra, MatAlgebraHom, MatrixOverA};
use crate::scalar::Scalar;

/// Violated complex or chain-map invariants; empty iff valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FreeComplex<F> {
    algebra: Arc<FdAlgebra<F>>,
    ranks: BTreeMap<i64, usize>,
    diffs: BTreeMap<i64, MatrixOverA<F>>,
}

pub(crate) fn sign<F: Scalar>(k: i64) -> F {
    if k.rem_euclid(2) == 0 {
        F::one()
    } else {
        -F::one()
    }
}

impl<F: Scalar> FreeComplex<F> {
    /// Builds a complex without checking `d^2 = 0` or shapes; see
    /// [`FreeComplex::validate`]. Zero ranks and zero differentials are dropped.
    pub fn from_parts_unchecked(
        algebra: Arc<FdAlgebra<F>>,
        ranks: impl IntoIterator<Item = (i64, usize)>,
        diffs: impl IntoIterator<Item = (i64, MatrixOverA<F>)>,
    ) -> Self {
        let ranks = ranks.into_iter().filter(|&(_, r)| r > 0).collect();
        let diffs = diffs.into_iter().filter(|(_, d)| !d.is_zero()).collect();
        FreeComplex {
            algebra,
            ranks,
            diffs,
        }
    }

    pub fn new(
        algebra: Arc<FdAlgebra<F>>,
        ranks: impl IntoIterator<Item = (i64, usize)>,
        diffs: impl IntoIterator<Item = (i64, MatrixOverA<F>)>,
    ) -> Result<Self> {
        let x = Self::from_parts_unchecked(algebra, ranks, diffs);
        let report = x.validate();
        if !report.is_valid() {
            return Err(Error::InvalidComplex(report.violations.join("; ")));
        }
        Ok(x)
    }

    pub fn zero(algebra: Arc<FdAlgebra<F>>) -> Self {
        FreeComplex {
            algebra,
            ranks: BTreeMap::new(),
            diffs: BTreeMap::new(),
        }
    }

    /// `A^rank` placed in a single degree.
    pub fn concentrated(algebra: Arc<FdAlgebra<F>>, rank: usize, degree: i64) -> Self {
        Self::from_parts_unchecked(algebra, [(degree, rank)], [])
    }

    /// The algebra itself in degree zero.
    pub fn unit(algebra: Arc<FdAlgebra<F>>) -> Self {
        Self::concentrated(algebra, 1, 0)
    }

    /// `A^a -> A^b` in degrees `top, top - 1` with differential `f` (`b x a`).
    pub fn two_term(f: &MatrixOverA<F>, top: i64) -> Self {
        Self::from_parts_unchecked(
            f.algebra().clone(),
            [(top, f.cols()), (top - 1, f.rows())],
            [(top, f.clone())],
        )
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for (&n, d) in &self.diffs {
            if !same_algebra(&self.algebra, d.algebra()) {
                violations.push(format!("d_{n} is over a different algebra"));
                continue;
            }
            let (rows, cols) = (self.rank(n - 1), self.rank(n));
            if d.rows() != rows || d.cols() != cols {
                violations.push(format!(
                    "d_{n} is {}x{}, expected {rows}x{cols}",
                    d.rows(),
                    d.cols()
                ));
            }
        }
        if !violations.is_empty() {
            return ValidationReport { violations };
        }
        for (&n, d) in &self.diffs {
            if let Some(lower) = self.diffs.get(&(n - 1)) {
                let dd = lower.mul(d).expect("shapes checked");
                if !dd.is_zero() {
                    violations.push(format!("d_{} d_{n} != 0", n - 1));
                }
            }
        }
        ValidationReport { violations }
    }

    pub fn algebra(&self) -> &Arc<FdAlgebra<F>> {
        &self.algebra
    }

    pub fn rank(&self, n: i64) -> usize {
        self.ranks.get(&n).copied().unwrap_or(0)
    }

    /// Nonzero ranks by degree.
    pub fn ranks(&self) -> &BTreeMap<i64, usize> {
        &self.ranks
    }

    /// Nonzero differentials by degree.
    pub fn differentials(&self) -> &BTreeMap<i64, MatrixOverA<F>> {
        &self.diffs
    }

    /// `d_n`, the zero matrix of the right shape when not stored.
    pub fn differential(&self, n: i64) -> MatrixOverA<F> {
        self.diffs.get(&n).cloned().unwrap_or_else(|| {
            MatrixOverA::zeros(self.algebra.clone(), self.rank(n - 1), self.rank(n))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.is_empty()
    }

    /// Lowest and highest degree with a nonzero term.
    pub fn support(&self) -> Option<(i64, i64)> {
        Some((*self.ranks.keys().next()?, *self.ranks.keys().next_back()?))
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.values().sum()
    }

    pub fn shift(&self, k: i64) -> Self {
        let s: F = sign(k);
        FreeComplex {
            algebra: self.algebra.clone(),
            ranks: self.ranks.iter().map(|(&n, &r)| (n + k, r)).collect(),
            diffs: self
                .diffs
                .iter()
                .map(|(&n, d)| (n + k, d.scale(&s)))
                .collect(),
        }
    }

    pub fn direct_sum(&self, o: &Self) -> Result<Self> {
        if !same_algebra(&self.algebra, &o.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        let degrees: BTreeSet<i64> = self.ranks.keys().chain(o.ranks.keys()).copied().collect();
        let ranks = degrees
            .iter()
            .map(|&n| (n, self.rank(n) + o.rank(n)))
            .collect::<Vec<_>>();
        let mut diffs = Vec::new();
        for &n in &degrees {
            if degrees.contains(&(n - 1)) {
                diffs.push((
                    n,
                    MatrixOverA::block_diag(&self.differential(n), &o.differential(n))?,
                ));
            }
        }
        Ok(Self::from_parts_unchecked(
            self.algebra.clone(),
            ranks,
            diffs,
        ))
    }

    /// Keeps `X_n` for `lo <= n <= hi` (open ends when `None`) and the
    /// differentials between kept degrees.
    pub fn brutal_truncate(&self, lo: Option<i64>, hi: Option<i64>) -> Self {
        let keep = |n: i64| lo.is_none_or(|l| n >= l) && hi.is_none_or(|h| n <= h);
        FreeComplex {
            algebra: self.algebra.clone(),
            ranks: self
                .ranks
                .iter()
                .filter(|(&n, _)| keep(n))
                .map(|(&n, &r)| (n, r))
                .collect(),
            diffs: self
                .diffs
                .iter()
                .filter(|(&n, _)| keep(n) && keep(n - 1))
                .map(|(&n, d)| (n, d.clone()))
                .collect(),
        }
    }

    /// Replaces `d_n` by `P_{n-1} d_n P_n^{-1}` for invertible `P_n` given
    /// together with their inverses. Missing degrees use the identity.
    pub fn conjugate(
        &self,
        isos: &BTreeMap<i64, (MatrixOverA<F>, MatrixOverA<F>)>,
    ) -> Result<Self> {
        let mut diffs = Vec::new();
        for (&n, d) in &self.diffs {
            let mut out = d.clone();
            if let Some((_, inv)) = isos.get(&n) {
                out = out.mul(inv)?;
            }
            if let Some((p, _)) = isos.get(&(n - 1)) {
                out = p.mul(&out)?;
            }
            diffs.push((n, out));
        }
        Ok(Self::from_parts_unchecked(
            self.algebra.clone(),
            self.ranks.clone(),
            diffs,
        ))
    }

    /// The underlying complex of ground-field vector spaces.
    pub fn to_ground(&self) -> FieldComplex<F> {
        let m = self.algebra.dim();
        FieldComplex::from_parts_unchecked(
            self.ranks.iter().map(|(&n, &r)| (n, r * m)),
            self.diffs.iter().map(|(&n, d)| (n, d.to_ground())),
        )
    }

    /// `X (x)_A M_n(K)` as a complex of `K`-spaces: `A^r` becomes `K^{rn}`.
    pub fn base_change(&self, phi: &MatAlgebraHom<F>) -> Result<FieldComplex<F>> {
        if !same_algebra(&self.algebra, phi.source()) {
            return Err(Error::AlgebraMismatch);
        }
        let n = phi.n();
        let mut diffs = Vec::with_capacity(self.diffs.len());
        for (&deg, d) in &self.diffs {
            diffs.push((deg, d.base_change(phi)?));
        }
        Ok(FieldComplex::from_parts_unchecked(
            self.ranks.iter().map(|(&deg, &r)| (deg, r * n)),
            diffs,
        ))
    }

    /// `dim_k H_n` for every degree of the support.
    pub fn homology_dims(&self) -> BTreeMap<i64, usize> {
        self.to_ground().homology_dims()
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::fdalg::tests::{q, two_cycle, Q};

    pub(crate) fn elem(a: &Arc<FdAlgebra<Q>>, i: usize) -> MatrixOverA<Q> {
        MatrixOverA::single(a.clone(), a.basis(i))
    }

    #[test]
    fn validation_examples() {
        let a = Arc::new(FdAlgebra::<Q>::dual_numbers());
        assert!(FreeComplex::unit(a.clone()).validate().is_valid());
        assert!(FreeComplex::two_term(&elem(&a, 1), 1).validate().is_valid());

        let one = MatrixOverA::identity(a.clone(), 1);
        let bad = FreeComplex::from_parts_unchecked(
            a.clone(),
            [(2, 1), (1, 1), (0, 1)],
            [(2, one.clone()), (1, one)],
        );
        assert_eq!(bad.validate().violations, vec!["d_1 d_2 != 0".to_string()]);

        let wrong =
            FreeComplex::from_parts_unchecked(a.clone(), [(1, 2), (0, 1)], [(1, elem(&a, 1))]);
        assert!(!wrong.validate().is_valid());
    }

    #[test]
    fn two_term_examples() {
        let a = Arc::new(two_cycle());
        let f = elem(&a, 3);
        let x = FreeComplex::two_term(&f, 1);
        assert_eq!(x.ranks(), &BTreeMap::from([(0, 1), (1, 1)]));
        assert_eq!(x.differential(1), f);

        let z = FreeComplex::two_term(&MatrixOverA::zeros(a.clone(), 1, 1), 0);
        assert!(z.differentials().is_empty());
        assert_eq!(z.ranks(), &BTreeMap::from([(-1, 1), (0, 1)]));
    }

    #[test]
    fn shift_sum_truncate() {
        let a = Arc::new(two_cycle());
        let f = elem(&a, 3);
        let x = FreeComplex::two_term(&f, 1);
        let s = x.shift(1);
        assert_eq!(s.ranks().keys().copied().collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(s.differential(2), f.neg());
        assert_eq!(s.shift(-1), x);

        let u = FreeComplex::unit(a.clone());
        assert_eq!(
            u.direct_sum(&u).unwrap(),
            FreeComplex::concentrated(a.clone(), 2, 0)
        );

        let one = MatrixOverA::identity(a.clone(), 1);
        let three = FreeComplex::new(
            a.clone(),
            [(2, 1), (1, 1), (0, 1)],
            [(2, one.clone()), (1, MatrixOverA::zeros(a.clone(), 1, 1))],
        )
        .unwrap();
        let t = three.brutal_truncate(None, Some(1));
        assert_eq!(t.ranks().keys().copied().collect::<Vec<_>>(), vec![0, 1]);
        assert!(t.differentials().is_empty());
    }

    #[test]
    fn homology_examples() {
        let a = Arc::new(FdAlgebra::<Q>::dual_numbers());
        assert_eq!(
            FreeComplex::unit(a.clone()).homology_dims(),
            BTreeMap::from([(0, 2)])
        );
        let x = FreeComplex::two_term(&elem(&a, 1), 1);
        assert_eq!(x.homology_dims(), BTreeMap::from([(0, 1), (1, 1)]));
        let c = FreeComplex::two_term(&MatrixOverA::identity(a.clone(), 1), 1);
        assert_eq!(c.homology_dims(), BTreeMap::from([(0, 0), (1, 0)]));
    }

    #[test]
    fn base_change_examples() {
        use crate::fdalg::hom::tests::loc_m2;
        let a = Arc::new(two_cycle());
        let phi = loc_m2(a.clone());
        let u = FreeComplex::unit(a.clone()).base_change(&phi).unwrap();
        assert_eq!(u.dims(), &BTreeMap::from([(0, 2)]));
        let x = FreeComplex::two_term(&elem(&a, 3), 1)
            .base_change(&phi)
            .unwrap();
        assert_eq!(x.differential(1).rank(), 1);
        assert_eq!(x.differential(1)[(0, 1)], q(1));
        assert_eq!(x.homology_dims(), BTreeMap::from([(0, 1), (1, 1)]));
    }

    #[test]
    fn conjugation_by_elementary_matrices() {
        let a = Arc::new(two_cycle());
        let f = MatrixOverA::from_fn(
            a.clone(),
            2,
            2,
            |i, j| if i == j { a.basis(2) } else { a.zero() },
        );
        let x = FreeComplex::two_term(&f, 0);
        let mut e = MatrixOverA::identity(a.clone(), 2);
        e.set(0, 1, a.basis(3));
        let mut einv = MatrixOverA::identity(a.clone(), 2);
        einv.set(0, 1, a.scale(&a.basis(3), &q(-1)));
        assert_eq!(e.mul(&einv).unwrap(), MatrixOverA::identity(a.clone(), 2));
        let y = x
            .conjugate(&BTreeMap::from([
                (0, (e.clone(), einv.clone())),
                (-1, (e, einv)),
            ]))
            .unwrap();
        assert!(y.validate().is_valid());
        assert_eq!(y.homology_dims(), x.homology_dims());
    }
}
