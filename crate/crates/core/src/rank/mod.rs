//! Rank functions: Sylvester ranks induced by homomorphisms `A -> M_n(K)`,
//! their derived extension to perfect complexes, periodic morphism ranks,
//! fullness, idempotent ranks and diagnostics.

mod diagnostic;
mod submatrix;

use std::fmt;

use serde::Serialize;

pub use diagnostic::{graded_dimension_rank, localizing_diagnostic, LocalizingReport};
pub use submatrix::{full_square_submatrix, SubmatrixWitness, WitnessSource};

use crate::coeff::{CoeffPoly, Period};
use crate::error::{Error, Result};
use crate::fdalg::{same_algebra, MatAlgebraHom, MatrixOverA};
use crate::homalg::{presentation, FdModule};
use crate::perf::{ChainMap, FreeComplex, IdempotentObject};
use crate::scalar::{Rational, Scalar};

/// Rank values: elements of `Q(d)`.
pub type RankPoly = CoeffPoly<Rational>;

/// A `d`-periodic rank function on perfect complexes, given on morphisms.
/// Object ranks default to the rank of the identity.
pub trait RankFunction<F: Scalar>: Send + Sync {
    fn morphism_rank(&self, f: &ChainMap<F>, d: Period) -> Result<RankPoly>;

    fn object_rank(&self, x: &FreeComplex<F>, d: Period) -> Result<RankPoly> {
        self.morphism_rank(&ChainMap::identity(x), d)
    }

    fn name(&self) -> String {
        "rank".into()
    }
}

/// A Sylvester rank function on matrices over `A`.
pub trait MatrixRank<F: Scalar>: Send + Sync {
    fn matrix_rank(&self, m: &MatrixOverA<F>) -> Result<Rational>;
}

/// The Sylvester rank function of a validated homomorphism `A -> M_n(K)`.
#[derive(Clone, Debug)]
pub struct SylvesterRank<F> {
    phi: MatAlgebraHom<F>,
}

fn check_division_period(d: Period) -> Result<()> {
    if !d.admits_division() {
        return Err(Error::EvenPeriod(d));
    }
    Ok(())
}

/// `(rho(Y) - rho(cone f) + q rho(X)) / (q + 1)` from object ranks at `d = inf`,
/// then reduced to `d`.
pub fn morphism_rank_from_objects(
    x: &RankPoly,
    y: &RankPoly,
    cone: &RankPoly,
    d: Period,
) -> Result<RankPoly> {
    check_division_period(d)?;
    let numerator = y.checked_sub(cone)?.checked_add(&x.shift(1))?;
    let quotient = numerator
        .divide_q_plus_1()?
        .ok_or_else(|| Error::NotDivisible(format!("{numerator} is not divisible by 1 + q")))?;
    let r = quotient.reduce_period(d)?;
    if !r.is_nonneg() {
        return Err(Error::Precondition {
            op: "derived_morphism_rank",
            msg: format!("negative rank {r}"),
        });
    }
    Ok(r)
}

impl<F: Scalar> SylvesterRank<F> {
    pub fn new(phi: MatAlgebraHom<F>) -> Result<Self> {
        let report = phi.verify();
        if !report.is_valid() {
            return Err(Error::InvalidHom(report.violations.join("; ")));
        }
        Ok(SylvesterRank { phi })
    }

    pub fn hom(&self) -> &MatAlgebraHom<F> {
        &self.phi
    }

    pub fn n(&self) -> usize {
        self.phi.n()
    }

    fn check(&self, m: &MatrixOverA<F>) -> Result<()> {
        if !same_algebra(m.algebra(), self.phi.source()) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    fn over_n(&self, k: usize) -> Rational {
        Rational::new(k.into(), self.n().into())
    }

    /// `rank_K(Phi(F)) / n`.
    pub fn sylvester_morphism_rank(&self, m: &MatrixOverA<F>) -> Result<Rational> {
        self.check(m)?;
        Ok(self.over_n(m.base_change(&self.phi)?.rank()))
    }

    /// `g - rho(f)` for the cokernel of `f : A^p -> A^g`.
    pub fn cokernel_rank(&self, f: &MatrixOverA<F>) -> Result<Rational> {
        Ok(Rational::from_integer(f.rows().into()) - self.sylvester_morphism_rank(f)?)
    }

    /// Rank of a finitely presented right module through a computed presentation.
    pub fn sylvester_module_rank(&self, m: &FdModule<F>) -> Result<Rational> {
        if !same_algebra(m.algebra(), self.phi.source()) {
            return Err(Error::AlgebraMismatch);
        }
        let p = presentation(m)?;
        self.cokernel_rank(&p.matrix)
    }

    /// `sum_n (r_n - rho(d_n) - rho(d_{n+1})) q^n`, computed as the graded
    /// dimension of `X (x)_A M_n(K)` divided by `n`.
    pub fn derived_object_rank(&self, x: &FreeComplex<F>) -> Result<RankPoly> {
        let h = x.base_change(&self.phi)?.homology_dims();
        let r = RankPoly::normalize(
            h.into_iter().map(|(deg, dim)| (deg, self.over_n(dim))),
            Period::Infinite,
        );
        debug_assert!(r.is_nonneg());
        Ok(r)
    }

    pub fn derived_morphism_rank(&self, f: &ChainMap<F>, d: Period) -> Result<RankPoly> {
        check_division_period(d)?;
        let x = self.derived_object_rank(f.source())?;
        let y = self.derived_object_rank(f.target())?;
        let c = self.derived_object_rank(&f.cone().complex)?;
        morphism_rank_from_objects(&x, &y, &c, d)
    }

    pub fn idempotent_rank(&self, p: &IdempotentObject<F>, d: Period) -> Result<RankPoly> {
        self.derived_morphism_rank(p.idempotent(), d)
    }
}

impl<F: Scalar> RankFunction<F> for SylvesterRank<F> {
    fn morphism_rank(&self, f: &ChainMap<F>, d: Period) -> Result<RankPoly> {
        self.derived_morphism_rank(f, d)
    }

    fn object_rank(&self, x: &FreeComplex<F>, d: Period) -> Result<RankPoly> {
        self.derived_object_rank(x)?.reduce_period(d)
    }

    fn name(&self) -> String {
        format!("sylvester rank through M_{}", self.n())
    }
}

impl<F: Scalar> MatrixRank<F> for SylvesterRank<F> {
    fn matrix_rank(&self, m: &MatrixOverA<F>) -> Result<Rational> {
        self.sylvester_morphism_rank(m)
    }
}

/// A rank function with one injected fault: the identity of `target` is
/// reported with rank `factor` times its true value.
pub struct Corrupted<'a, F> {
    pub inner: &'a dyn RankFunction<F>,
    pub target: FreeComplex<F>,
    pub factor: Rational,
}

impl<F: Scalar> RankFunction<F> for Corrupted<'_, F> {
    fn morphism_rank(&self, f: &ChainMap<F>, d: Period) -> Result<RankPoly> {
        let r = self.inner.morphism_rank(f, d)?;
        if f.source() == &self.target && f.is_identity() {
            return Ok(r.scale(&self.factor));
        }
        Ok(r)
    }

    fn name(&self) -> String {
        format!("{} with a corrupted value", self.inner.name())
    }
}

/// A Sylvester matrix rank with one injected fault on the identity matrix of
/// the given size.
pub struct CorruptedMatrixRank<'a, F> {
    pub inner: &'a dyn MatrixRank<F>,
    pub size: usize,
    pub factor: Rational,
}

impl<F: Scalar> MatrixRank<F> for CorruptedMatrixRank<'_, F> {
    fn matrix_rank(&self, m: &MatrixOverA<F>) -> Result<Rational> {
        let r = self.inner.matrix_rank(m)?;
        if m.rows() == self.size && *m == MatrixOverA::identity(m.algebra().clone(), self.size) {
            return Ok(r * self.factor.clone());
        }
        Ok(r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Classification {
    Morphism {
        left_full: bool,
        right_full: bool,
        full: bool,
    },
    Object {
        in_kernel: bool,
    },
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Morphism { full: true, .. } => f.write_str("full"),
            Classification::Morphism {
                left_full: true, ..
            } => f.write_str("left full"),
            Classification::Morphism {
                right_full: true, ..
            } => f.write_str("right full"),
            Classification::Morphism { .. } => f.write_str("not full"),
            Classification::Object { in_kernel: true } => f.write_str("in kernel"),
            Classification::Object { in_kernel: false } => f.write_str("not in kernel"),
        }
    }
}

/// Compares `rho(f)` with `rho(X)` and `rho(Y)` exactly.
pub fn classify_morphism<F: Scalar>(
    rho: &dyn RankFunction<F>,
    f: &ChainMap<F>,
    d: Period,
) -> Result<(RankPoly, Classification)> {
    let r = rho.morphism_rank(f, d)?;
    let left_full = r == rho.object_rank(f.source(), d)?;
    let right_full = r == rho.object_rank(f.target(), d)?;
    Ok((
        r,
        Classification::Morphism {
            left_full,
            right_full,
            full: left_full && right_full,
        },
    ))
}

/// Kernel membership `rho(X) = 0`.
pub fn classify_object<F: Scalar>(
    rho: &dyn RankFunction<F>,
    x: &FreeComplex<F>,
    d: Period,
) -> Result<(RankPoly, Classification)> {
    let r = rho.object_rank(x, d)?;
    let in_kernel = r.is_zero();
    Ok((r, Classification::Object { in_kernel }))
}

/// Kernel membership for a summand `(X, e)`, whose rank is `rho(e)`.
pub fn classify_idempotent<F: Scalar>(
    rho: &dyn RankFunction<F>,
    p: &IdempotentObject<F>,
    d: Period,
) -> Result<(RankPoly, Classification)> {
    let r = rho.morphism_rank(p.idempotent(), d)?;
    let in_kernel = r.is_zero();
    Ok((r, Classification::Object { in_kernel }))
}

pub(crate) fn rank_one() -> RankPoly {
    RankPoly::one(Period::Infinite)
}

#[cfg(test)]
pub(crate) mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fdalg::hom::tests::{augmentation, loc_m2};
    use crate::fdalg::tests::{two_cycle, Q};
    use crate::fdalg::FdAlgebra;
    use crate::homalg::tests::simple;
    use crate::homalg::Side;
    use crate::perf::tests::elem;
    use crate::scalar::rational;

    pub(crate) fn half() -> Rational {
        rational(1, 2)
    }

    fn poly(terms: &[(i64, Rational)]) -> RankPoly {
        RankPoly::normalize(terms.iter().cloned(), Period::Infinite)
    }

    pub(crate) fn tau_generator(a: &Arc<FdAlgebra<Q>>) -> IdempotentObject<Q> {
        // e2 A -> e1 A, left multiplication by alpha2, as a summand of A -> A
        let x = FreeComplex::two_term(&elem(a, 3), 1);
        let e = ChainMap::new(x.clone(), x, [(1, elem(a, 1)), (0, elem(a, 0))]).unwrap();
        IdempotentObject::new(e).unwrap()
    }

    #[test]
    fn sylvester_morphism_examples() {
        let a = Arc::new(two_cycle());
        let s = SylvesterRank::new(loc_m2(a.clone())).unwrap();
        assert_eq!(
            s.sylvester_morphism_rank(&MatrixOverA::identity(a.clone(), 1))
                .unwrap(),
            rational(1, 1)
        );
        assert_eq!(s.sylvester_morphism_rank(&elem(&a, 3)).unwrap(), half());
        assert_eq!(
            s.sylvester_morphism_rank(&elem(&a, 2)).unwrap(),
            rational(0, 1)
        );
    }

    #[test]
    fn module_ranks() {
        let a = Arc::new(two_cycle());
        let s = SylvesterRank::new(loc_m2(a.clone())).unwrap();
        let aug = SylvesterRank::new(augmentation(a.clone())).unwrap();
        let reg = FdModule::regular(a.clone(), Side::Right);
        assert_eq!(s.sylvester_module_rank(&reg).unwrap(), rational(1, 1));
        // S1 (x)_A M_2(k) = 0
        assert_eq!(
            s.sylvester_module_rank(&simple(&a, 0, Side::Right))
                .unwrap(),
            rational(0, 1)
        );
        assert_eq!(
            s.sylvester_module_rank(&simple(&a, 1, Side::Right))
                .unwrap(),
            rational(1, 2)
        );
        assert_eq!(
            aug.sylvester_module_rank(&simple(&a, 0, Side::Right))
                .unwrap(),
            rational(1, 1)
        );
    }

    #[test]
    fn derived_object_examples() {
        let a = Arc::new(two_cycle());
        let s = SylvesterRank::new(loc_m2(a.clone())).unwrap();
        let f = elem(&a, 3);
        let x = FreeComplex::two_term(&f, 1);
        // (rho(Q) - rho(f)) + (rho(P) - rho(f)) q
        assert_eq!(
            s.derived_object_rank(&x).unwrap(),
            poly(&[(0, half()), (1, half())])
        );
        let c = FreeComplex::two_term(&MatrixOverA::identity(a.clone(), 2), 3);
        assert!(s.derived_object_rank(&c).unwrap().is_zero());
        assert_eq!(
            s.derived_object_rank(&FreeComplex::unit(a.clone()))
                .unwrap(),
            rank_one()
        );

        let aug = SylvesterRank::new(augmentation(a.clone())).unwrap();
        assert_eq!(
            aug.derived_object_rank(&x).unwrap(),
            poly(&[(0, rational(1, 1)), (1, rational(1, 1))])
        );
    }

    #[test]
    fn derived_morphism_examples() {
        let a = Arc::new(two_cycle());
        let s = SylvesterRank::new(loc_m2(a.clone())).unwrap();
        let u = FreeComplex::unit(a.clone());
        for d in [Period::Infinite, Period::Finite(1), Period::Finite(3)] {
            assert_eq!(
                s.derived_morphism_rank(&ChainMap::identity(&u), d).unwrap(),
                RankPoly::one(d)
            );
            assert!(s
                .derived_morphism_rank(&ChainMap::zero(&u, &u), d)
                .unwrap()
                .is_zero());
        }
        let f = ChainMap::degree_zero(&elem(&a, 3));
        assert_eq!(
            s.derived_morphism_rank(&f, Period::Finite(1)).unwrap(),
            RankPoly::constant(half(), Period::Finite(1))
        );
        assert!(matches!(
            s.derived_morphism_rank(&f, Period::Finite(2)),
            Err(Error::EvenPeriod(_))
        ));
    }

    #[test]
    fn kernel_and_fullness() {
        let a = Arc::new(two_cycle());
        let s = SylvesterRank::new(loc_m2(a.clone())).unwrap();
        let aug = SylvesterRank::new(augmentation(a.clone())).unwrap();
        let u = FreeComplex::unit(a.clone());
        let (_, c) = classify_morphism(&s, &ChainMap::identity(&u), Period::Infinite).unwrap();
        assert_eq!(
            c,
            Classification::Morphism {
                left_full: true,
                right_full: true,
                full: true
            }
        );

        let tau = tau_generator(&a);
        let (r, c) = classify_idempotent(&s, &tau, Period::Infinite).unwrap();
        assert!(r.is_zero());
        assert_eq!(c, Classification::Object { in_kernel: true });
        let (r, c) = classify_idempotent(&aug, &tau, Period::Infinite).unwrap();
        assert_eq!(r, rank_one());
        assert_eq!(c, Classification::Object { in_kernel: false });

        // the free two-term complex on alpha2 is not in either kernel
        let x = FreeComplex::two_term(&elem(&a, 3), 1);
        let (_, c) = classify_object(&aug, &x, Period::Infinite).unwrap();
        assert_eq!(c, Classification::Object { in_kernel: false });
    }

    #[test]
    fn idempotent_examples() {
        let a = Arc::new(two_cycle());
        let s = SylvesterRank::new(loc_m2(a.clone())).unwrap();
        let x = FreeComplex::two_term(&elem(&a, 3), 1);
        let id = IdempotentObject::new(ChainMap::identity(&x)).unwrap();
        assert_eq!(
            s.idempotent_rank(&id, Period::Infinite).unwrap(),
            s.derived_object_rank(&x).unwrap()
        );
        let zero = IdempotentObject::new(ChainMap::zero(&x, &x)).unwrap();
        assert!(s
            .idempotent_rank(&zero, Period::Infinite)
            .unwrap()
            .is_zero());
        let e1 = IdempotentObject::new(ChainMap::degree_zero(&elem(&a, 0))).unwrap();
        assert_eq!(
            s.idempotent_rank(&e1, Period::Infinite).unwrap(),
            RankPoly::constant(half(), Period::Infinite)
        );
    }

    #[test]
    fn corrupted_identity() {
        let a = Arc::new(two_cycle());
        let s = SylvesterRank::new(loc_m2(a.clone())).unwrap();
        let u = FreeComplex::unit(a.clone());
        let bad = Corrupted {
            inner: &s,
            target: u.clone(),
            factor: rational(2, 1),
        };
        assert_eq!(
            bad.object_rank(&u, Period::Infinite).unwrap(),
            RankPoly::constant(rational(2, 1), Period::Infinite)
        );
        assert_eq!(
            bad.object_rank(&u.shift(1), Period::Infinite).unwrap(),
            RankPoly::monomial(rational(1, 1), 1, Period::Infinite)
        );
    }
}
