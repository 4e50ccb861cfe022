//! Seeded random algebra data: elements, matrices, complexes, chain maps and
//! contractible complexes.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SampleConfig;
use crate::fdalg::{FdAlgebra, MatrixOverA};
use crate::linal::Matrix;
use crate::perf::{ChainMap, FreeComplex};
use crate::scalar::Scalar;

/// The generator for sample `index`: one ChaCha stream per sample, so samples
/// can be drawn in any order and replayed alone.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub struct Sampler<'a, F> {
    pub algebra: &'a Arc<FdAlgebra<F>>,
    pub cfg: &'a SampleConfig,
}

impl<'a, F: Scalar> Sampler<'a, F> {
    pub fn new(algebra: &'a Arc<FdAlgebra<F>>, cfg: &'a SampleConfig) -> Self {
        Sampler { algebra, cfg }
    }

    /// A small integer, possibly zero in positive characteristic.
    pub fn small(&self, rng: &mut impl Rng) -> F {
        let v = *[-2i64, -1, 1, 2].choose(rng).expect("nonempty");
        F::from_i64(v)
    }

    /// A nonzero scalar.
    pub fn unit_scalar(&self, rng: &mut impl Rng) -> F {
        loop {
            let c = self.small(rng);
            if !c.is_zero() {
                return c;
            }
        }
    }

    pub fn element(&self, rng: &mut impl Rng) -> Vec<F> {
        (0..self.algebra.dim())
            .map(|_| {
                if rng.gen_bool(self.cfg.density) {
                    self.small(rng)
                } else {
                    F::zero()
                }
            })
            .collect()
    }

    pub fn matrix(&self, rng: &mut impl Rng, rows: usize, cols: usize) -> MatrixOverA<F> {
        MatrixOverA::from_fn(self.algebra.clone(), rows, cols, |_, _| self.element(rng))
    }

    pub fn size(&self, rng: &mut impl Rng) -> usize {
        rng.gen_range(0..=self.cfg.max_rank)
    }

    pub fn positive_size(&self, rng: &mut impl Rng) -> usize {
        rng.gen_range(1..=self.cfg.max_rank.max(1))
    }

    /// A random `combination` of `basis` with sparse small coefficients.
    fn combination<T: Clone>(
        &self,
        rng: &mut impl Rng,
        basis: &[T],
        zero: T,
        add: impl Fn(&T, &T, &F) -> T,
    ) -> T {
        let mut out = zero;
        for b in basis {
            if rng.gen_bool(self.cfg.density) {
                out = add(&out, b, &self.small(rng));
            }
        }
        out
    }

    /// A random `r x c` matrix `D` with `D E = 0`.
    fn differential_before(
        &self,
        rng: &mut impl Rng,
        rows: usize,
        e: &MatrixOverA<F>,
    ) -> MatrixOverA<F> {
        let a = self.algebra;
        let m = a.dim();
        let cols = e.rows();
        let zero = MatrixOverA::zeros(a.clone(), rows, cols);
        if e.is_zero() {
            return self.matrix(rng, rows, cols);
        }
        let units: Vec<MatrixOverA<F>> = (0..rows * cols * m)
            .map(|u| {
                let mut d = zero.clone();
                d.set(u / (cols * m), (u / m) % cols, a.basis(u % m));
                d
            })
            .collect();
        let images: Vec<Vec<F>> = units
            .iter()
            .map(|d| {
                d.mul(e)
                    .expect("shapes fit")
                    .entries()
                    .iter()
                    .flatten()
                    .cloned()
                    .collect()
            })
            .collect();
        let len = images.first().map_or(0, Vec::len);
        let kernel = Matrix::from_columns(len, &images).kernel_basis();
        let solutions: Vec<MatrixOverA<F>> = kernel
            .iter()
            .map(|v| {
                MatrixOverA::from_fn(a.clone(), rows, cols, |i, j| {
                    v[(i * cols + j) * m..(i * cols + j + 1) * m].to_vec()
                })
            })
            .collect();
        self.combination(rng, &solutions, zero, |x, y, c| {
            x.add(&y.scale(c)).expect("shapes fit")
        })
    }

    /// A random bounded complex. A fixed share of samples is `A` in degree 0
    /// or a two-term complex, so that small objects are always exercised.
    pub fn complex(&self, rng: &mut impl Rng) -> FreeComplex<F> {
        let a = self.algebra;
        match rng.gen_range(0..8) {
            0 => return FreeComplex::unit(a.clone()),
            1 => {
                let (r, c) = (self.positive_size(rng), self.positive_size(rng));
                let f = self.matrix(rng, r, c);
                return FreeComplex::two_term(&f, rng.gen_range(0..=1));
            }
            _ => {}
        }
        let len = rng.gen_range(1..=self.cfg.max_degrees.max(1)) as i64;
        let lo = rng.gen_range(-1..=1);
        let ranks: BTreeMap<i64, usize> = (lo..lo + len).map(|n| (n, self.size(rng))).collect();
        let mut diffs = BTreeMap::new();
        let mut above = MatrixOverA::zeros(a.clone(), ranks[&(lo + len - 1)], 0);
        for n in (lo + 1..lo + len).rev() {
            let d = self.differential_before(rng, ranks[&(n - 1)], &above);
            above = d.clone();
            diffs.insert(n, d);
        }
        FreeComplex::new(a.clone(), ranks, diffs)
            .expect("differentials square to zero by construction")
    }

    pub fn chain_map(
        &self,
        rng: &mut impl Rng,
        x: &FreeComplex<F>,
        y: &FreeComplex<F>,
    ) -> ChainMap<F> {
        let basis = ChainMap::basis_of_maps(x, y);
        self.combination(rng, &basis, ChainMap::zero(x, y), |f, g, c| {
            f.add(&g.scale(c)).expect("parallel")
        })
    }

    pub fn null_homotopic(
        &self,
        rng: &mut impl Rng,
        x: &FreeComplex<F>,
        y: &FreeComplex<F>,
    ) -> ChainMap<F> {
        let s = x
            .ranks()
            .iter()
            .filter(|(n, _)| y.rank(**n + 1) > 0)
            .map(|(&n, &r)| (n, self.matrix(rng, y.rank(n + 1), r)))
            .collect();
        ChainMap::null_homotopic(x, y, &s).expect("null-homotopic maps are chain maps")
    }

    /// An elementary invertible matrix and its inverse.
    pub fn invertible(&self, rng: &mut impl Rng, n: usize) -> (MatrixOverA<F>, MatrixOverA<F>) {
        let a = self.algebra;
        let mut p = MatrixOverA::identity(a.clone(), n);
        let mut pinv = p.clone();
        for _ in 0..rng.gen_range(0..=2 * n) {
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let (e, einv) = if i == j {
                let c = self.unit_scalar(rng);
                let mut e = MatrixOverA::identity(a.clone(), n);
                let mut einv = e.clone();
                e.set(i, i, a.scalar(c.clone()));
                einv.set(i, i, a.scalar(c.inv()));
                (e, einv)
            } else {
                let x = self.element(rng);
                let mut e = MatrixOverA::identity(a.clone(), n);
                let mut einv = e.clone();
                e.set(i, j, x.clone());
                einv.set(i, j, a.sub(&a.zero(), &x));
                (e, einv)
            };
            p = e.mul(&p).expect("square");
            pinv = pinv.mul(&einv).expect("square");
        }
        (p, pinv)
    }

    /// Conjugation data for every degree of `x`.
    pub fn automorphism(
        &self,
        rng: &mut impl Rng,
        x: &FreeComplex<F>,
    ) -> BTreeMap<i64, (MatrixOverA<F>, MatrixOverA<F>)> {
        x.ranks()
            .iter()
            .map(|(&n, &r)| (n, self.invertible(rng, r)))
            .collect()
    }

    /// A direct sum of shifted cones of identities, conjugated by random
    /// invertible matrices.
    pub fn contractible(&self, rng: &mut impl Rng) -> FreeComplex<F> {
        let a = self.algebra;
        let mut x = FreeComplex::zero(a.clone());
        for _ in 0..rng.gen_range(1..=3) {
            let piece = if rng.gen_bool(0.5) {
                FreeComplex::two_term(
                    &MatrixOverA::identity(a.clone(), self.positive_size(rng)),
                    0,
                )
            } else {
                ChainMap::identity(&self.complex(rng)).cone().complex
            };
            x = x
                .direct_sum(&piece.shift(rng.gen_range(-1..=1)))
                .expect("same algebra");
        }
        let iso = self.automorphism(rng, &x);
        x.conjugate(&iso).expect("invertible conjugation")
    }
}
