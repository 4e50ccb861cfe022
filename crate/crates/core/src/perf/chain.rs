use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::{FreeComplex, ValidationReport};
use crate::error::{Error, Result};
use crate::fdalg::{same_algebra, FdAlgebra, MatrixOverA};
use crate::linal::Matrix;
use crate::scalar::Scalar;

/// A strict chain map `f : X -> Y`, `f_n` an `r^Y_n x r^X_n` matrix over `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap<F> {
    source: FreeComplex<F>,
    target: FreeComplex<F>,
    comps: BTreeMap<i64, MatrixOverA<F>>,
}

/// `cone(f)` together with `iota : Y -> cone(f)` and `pi : cone(f) -> Sigma X`.
#[derive(Clone, Debug)]
pub struct Cone<F> {
    pub complex: FreeComplex<F>,
    pub iota: ChainMap<F>,
    pub pi: ChainMap<F>,
}

fn degrees_of<F>(xs: &[&FreeComplex<F>]) -> BTreeSet<i64> {
    xs.iter().flat_map(|x| x.ranks.keys().copied()).collect()
}

impl<F: Scalar> ChainMap<F> {
    pub fn from_parts_unchecked(
        source: FreeComplex<F>,
        target: FreeComplex<F>,
        comps: impl IntoIterator<Item = (i64, MatrixOverA<F>)>,
    ) -> Self {
        let comps = comps.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        ChainMap {
            source,
            target,
            comps,
        }
    }

    pub fn new(
        source: FreeComplex<F>,
        target: FreeComplex<F>,
        comps: impl IntoIterator<Item = (i64, MatrixOverA<F>)>,
    ) -> Result<Self> {
        let f = Self::from_parts_unchecked(source, target, comps);
        let report = f.validate();
        if !report.is_valid() {
            return Err(Error::InvalidChainMap(report.violations.join("; ")));
        }
        Ok(f)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        if !same_algebra(self.source.algebra(), self.target.algebra()) {
            violations.push("source and target are over different algebras".into());
            return ValidationReport { violations };
        }
        for (&n, c) in &self.comps {
            if !same_algebra(self.source.algebra(), c.algebra()) {
                violations.push(format!("f_{n} is over a different algebra"));
            } else if c.rows() != self.target.rank(n) || c.cols() != self.source.rank(n) {
                violations.push(format!(
                    "f_{n} is {}x{}, expected {}x{}",
                    c.rows(),
                    c.cols(),
                    self.target.rank(n),
                    self.source.rank(n)
                ));
            }
        }
        if !violations.is_empty() {
            return ValidationReport { violations };
        }
        for n in self.check_degrees() {
            let lhs = self
                .target
                .differential(n)
                .mul(&self.component(n))
                .expect("shapes checked");
            let rhs = self
                .component(n - 1)
                .mul(&self.source.differential(n))
                .expect("shapes checked");
            if lhs != rhs {
                violations.push(format!("d_{n} f_{n} != f_{} d_{n}", n - 1));
            }
        }
        ValidationReport { violations }
    }

    fn check_degrees(&self) -> BTreeSet<i64> {
        degrees_of(&[&self.source, &self.target])
            .into_iter()
            .flat_map(|n| [n, n + 1])
            .collect()
    }

    pub fn source(&self) -> &FreeComplex<F> {
        &self.source
    }

    pub fn target(&self) -> &FreeComplex<F> {
        &self.target
    }

    pub fn algebra(&self) -> &Arc<FdAlgebra<F>> {
        self.source.algebra()
    }

    /// Nonzero components by degree.
    pub fn components(&self) -> &BTreeMap<i64, MatrixOverA<F>> {
        &self.comps
    }

    pub fn component(&self, n: i64) -> MatrixOverA<F> {
        self.comps.get(&n).cloned().unwrap_or_else(|| {
            MatrixOverA::zeros(
                self.source.algebra().clone(),
                self.target.rank(n),
                self.source.rank(n),
            )
        })
    }

    pub fn identity(x: &FreeComplex<F>) -> Self {
        let comps = x
            .ranks
            .iter()
            .map(|(&n, &r)| (n, MatrixOverA::identity(x.algebra().clone(), r)));
        Self::from_parts_unchecked(x.clone(), x.clone(), comps)
    }

    pub fn zero(source: &FreeComplex<F>, target: &FreeComplex<F>) -> Self {
        Self::from_parts_unchecked(source.clone(), target.clone(), [])
    }

    /// The map `A^cols -> A^rows` given by `f`, between complexes concentrated
    /// in degree zero.
    pub fn degree_zero(f: &MatrixOverA<F>) -> Self {
        let a = f.algebra().clone();
        Self::from_parts_unchecked(
            FreeComplex::concentrated(a.clone(), f.cols(), 0),
            FreeComplex::concentrated(a, f.rows(), 0),
            [(0, f.clone())],
        )
    }

    /// `g = d^Y s + s d^X` for a family `s_n : X_n -> Y_{n+1}`.
    pub fn null_homotopic(
        source: &FreeComplex<F>,
        target: &FreeComplex<F>,
        s: &BTreeMap<i64, MatrixOverA<F>>,
    ) -> Result<Self> {
        let alg = source.algebra().clone();
        let get = |n: i64| {
            s.get(&n).cloned().unwrap_or_else(|| {
                MatrixOverA::zeros(alg.clone(), target.rank(n + 1), source.rank(n))
            })
        };
        let mut comps = Vec::new();
        for n in degrees_of(&[source, target]) {
            let a = target.differential(n + 1).mul(&get(n))?;
            let b = get(n - 1).mul(&source.differential(n))?;
            comps.push((n, a.add(&b)?));
        }
        Self::new(source.clone(), target.clone(), comps)
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && *self == Self::identity(&self.source)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// `self` followed by `g`, i.e. `g . self`.
    pub fn then(&self, g: &Self) -> Result<Self> {
        if self.target != g.source {
            return Err(Error::InvalidChainMap(
                "composition of non-composable maps".into(),
            ));
        }
        let mut comps = Vec::new();
        for (&n, f) in &self.comps {
            if let Some(gn) = g.comps.get(&n) {
                comps.push((n, gn.mul(f)?));
            }
        }
        Ok(Self::from_parts_unchecked(
            self.source.clone(),
            g.target.clone(),
            comps,
        ))
    }

    fn check_parallel(&self, o: &Self) -> Result<()> {
        if self.source != o.source || self.target != o.target {
            return Err(Error::InvalidChainMap(
                "maps do not share source and target".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_parallel(o)?;
        let degrees: BTreeSet<i64> = self.comps.keys().chain(o.comps.keys()).copied().collect();
        let mut comps = Vec::new();
        for n in degrees {
            comps.push((n, self.component(n).add(&o.component(n))?));
        }
        Ok(Self::from_parts_unchecked(
            self.source.clone(),
            self.target.clone(),
            comps,
        ))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        let comps = self.comps.iter().map(|(&n, m)| (n, m.scale(c)));
        Self::from_parts_unchecked(self.source.clone(), self.target.clone(), comps)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    /// `Sigma^k f`; components move with the degrees and carry no sign.
    pub fn shift(&self, k: i64) -> Self {
        ChainMap {
            source: self.source.shift(k),
            target: self.target.shift(k),
            comps: self
                .comps
                .iter()
                .map(|(&n, m)| (n + k, m.clone()))
                .collect(),
        }
    }

    pub fn direct_sum(&self, o: &Self) -> Result<Self> {
        let source = self.source.direct_sum(&o.source)?;
        let target = self.target.direct_sum(&o.target)?;
        let mut comps = Vec::new();
        for n in degrees_of(&[&source, &target]) {
            comps.push((
                n,
                MatrixOverA::block_diag(&self.component(n), &o.component(n))?,
            ));
        }
        Ok(Self::from_parts_unchecked(source, target, comps))
    }

    /// `[[f, h], [0, g]] : X + Z -> Y + W` for `f : X -> Y`, `h : Z -> Y`,
    /// `g : Z -> W`.
    pub fn upper_triangular(f: &Self, h: &Self, g: &Self) -> Result<Self> {
        if h.target != f.target || h.source != g.source {
            return Err(Error::InvalidChainMap(
                "corner map does not fit the diagonal".into(),
            ));
        }
        let alg = f.algebra().clone();
        let source = f.source.direct_sum(&g.source)?;
        let target = f.target.direct_sum(&g.target)?;
        let mut comps = Vec::new();
        for n in degrees_of(&[&source, &target]) {
            let grid = [
                vec![f.component(n), h.component(n)],
                vec![
                    MatrixOverA::zeros(alg.clone(), g.target.rank(n), f.source.rank(n)),
                    g.component(n),
                ],
            ];
            comps.push((n, MatrixOverA::blocks(&alg, &grid)?));
        }
        Ok(Self::from_parts_unchecked(source, target, comps))
    }

    /// Mapping cone with `cone_n = X_{n-1} + Y_n` and differential
    /// `[[-d^X_{n-1}, 0], [f_{n-1}, d^Y_n]]`.
    pub fn cone(&self) -> Cone<F> {
        let x = &self.source;
        let y = &self.target;
        let alg = x.algebra().clone();
        let degrees: BTreeSet<i64> = x
            .ranks
            .keys()
            .map(|n| n + 1)
            .chain(y.ranks.keys().copied())
            .collect();
        let rank = |n: i64| x.rank(n - 1) + y.rank(n);
        let zeros = |r: usize, c: usize| MatrixOverA::zeros(alg.clone(), r, c);

        let mut diffs = Vec::new();
        for &n in &degrees {
            if !degrees.contains(&(n - 1)) {
                continue;
            }
            let grid = [
                vec![x.differential(n - 1).neg(), zeros(x.rank(n - 2), y.rank(n))],
                vec![self.component(n - 1), y.differential(n)],
            ];
            diffs.push((
                n,
                MatrixOverA::blocks(&alg, &grid).expect("cone blocks fit"),
            ));
        }
        let complex = FreeComplex::from_parts_unchecked(
            alg.clone(),
            degrees.iter().map(|&n| (n, rank(n))),
            diffs,
        );

        let iota = degrees.iter().map(|&n| {
            let grid = [
                vec![zeros(x.rank(n - 1), y.rank(n))],
                vec![MatrixOverA::identity(alg.clone(), y.rank(n))],
            ];
            (
                n,
                MatrixOverA::blocks(&alg, &grid).expect("iota blocks fit"),
            )
        });
        let iota = Self::from_parts_unchecked(y.clone(), complex.clone(), iota.collect::<Vec<_>>());

        let pi = degrees.iter().map(|&n| {
            let grid = [vec![
                MatrixOverA::identity(alg.clone(), x.rank(n - 1)),
                zeros(x.rank(n - 1), y.rank(n)),
            ]];
            (n, MatrixOverA::blocks(&alg, &grid).expect("pi blocks fit"))
        });
        let pi = Self::from_parts_unchecked(complex.clone(), x.shift(1), pi.collect::<Vec<_>>());
        Cone { complex, iota, pi }
    }

    /// Basis over the ground field of the space of all chain maps `X -> Y`.
    pub fn basis_of_maps(source: &FreeComplex<F>, target: &FreeComplex<F>) -> Vec<Self> {
        let alg = source.algebra().clone();
        let m = alg.dim();
        let degrees: Vec<i64> = source
            .ranks
            .keys()
            .copied()
            .filter(|n| target.rank(*n) > 0)
            .collect();
        // unknowns: (degree, row, col, basis element)
        let mut unknowns = Vec::new();
        for &n in &degrees {
            for i in 0..target.rank(n) {
                for j in 0..source.rank(n) {
                    for b in 0..m {
                        unknowns.push((n, i, j, b));
                    }
                }
            }
        }
        if unknowns.is_empty() {
            return Vec::new();
        }
        let build = |coeffs: &[F]| {
            let mut comps: BTreeMap<i64, MatrixOverA<F>> = BTreeMap::new();
            for (&(n, i, j, b), c) in unknowns.iter().zip(coeffs) {
                if c.is_zero() {
                    continue;
                }
                let entry = comps.entry(n).or_insert_with(|| {
                    MatrixOverA::zeros(alg.clone(), target.rank(n), source.rank(n))
                });
                let mut v = entry.get(i, j).clone();
                v[b] = v[b].clone() + c.clone();
                entry.set(i, j, v);
            }
            Self::from_parts_unchecked(source.clone(), target.clone(), comps)
        };
        let residual = |f: &Self| -> Vec<F> {
            let mut out = Vec::new();
            for n in f.check_degrees() {
                let lhs = target
                    .differential(n)
                    .mul(&f.component(n))
                    .expect("shapes fit");
                let rhs = f
                    .component(n - 1)
                    .mul(&source.differential(n))
                    .expect("shapes fit");
                for e in lhs.sub(&rhs).expect("shapes fit").entries() {
                    out.extend(e.iter().cloned());
                }
            }
            out
        };
        let mut columns = Vec::with_capacity(unknowns.len());
        for u in 0..unknowns.len() {
            let mut e = vec![F::zero(); unknowns.len()];
            e[u] = F::one();
            columns.push(residual(&build(&e)));
        }
        let rows = columns[0].len();
        let system = Matrix::from_columns(rows, &columns);
        system.kernel_basis().iter().map(|v| build(v)).collect()
    }
}

/// A pair `(X, e)` with `e` a strictly idempotent endomorphism of `X`.
#[derive(Clone, Debug, PartialEq)]
pub struct IdempotentObject<F> {
    complex: FreeComplex<F>,
    e: ChainMap<F>,
}

impl<F: Scalar> IdempotentObject<F> {
    pub fn new(e: ChainMap<F>) -> Result<Self> {
        if e.source != e.target {
            return Err(Error::NotIdempotent);
        }
        let report = e.validate();
        if !report.is_valid() {
            return Err(Error::InvalidChainMap(report.violations.join("; ")));
        }
        if e.then(&e)? != e {
            return Err(Error::NotIdempotent);
        }
        Ok(IdempotentObject {
            complex: e.source.clone(),
            e,
        })
    }

    pub fn complex(&self) -> &FreeComplex<F> {
        &self.complex
    }

    pub fn idempotent(&self) -> &ChainMap<F> {
        &self.e
    }
}
