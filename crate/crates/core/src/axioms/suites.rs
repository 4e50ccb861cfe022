use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;

use super::{run, sample_rng, AxiomReport, Outcome, SampleConfig, SampleResult, Sampler};
use crate::coeff::Period;
use crate::error::{Error, Result};
use crate::fdalg::{FdAlgebra, MatrixOverA};
use crate::json::{algebra_to_json, chain_map_to_json, complex_to_json, matrix_over_a_to_json};
use crate::linal::Matrix;
use crate::perf::{ChainMap, FreeComplex};
use crate::rank::{MatrixRank, RankFunction, RankPoly};
use crate::scalar::{Rational, Scalar};

type Verdict = Result<Option<String>>;

#[derive(Default)]
struct Checks {
    out: Vec<Outcome>,
}

impl Checks {
    fn check(&mut self, axiom: &'static str, f: impl FnOnce() -> Verdict) {
        let result = match f() {
            Ok(None) => Ok(()),
            Ok(Some(msg)) => Err(msg),
            Err(e) => Err(format!("error: {e}")),
        };
        self.out.push(Outcome { axiom, result });
    }
}

fn eq<T: PartialEq + std::fmt::Display>(lhs: &T, rhs: &T, what: &str) -> Option<String> {
    (lhs != rhs).then(|| format!("{what}: {lhs} != {rhs}"))
}

fn le(a: &RankPoly, b: &RankPoly, what: &str) -> Verdict {
    Ok((!a.le(b)?).then(|| format!("{what}: {a} is not <= {b}")))
}

fn le_q(a: &Rational, b: &Rational, what: &str) -> Option<String> {
    (a > b).then(|| format!("{what}: {a} is not <= {b}"))
}

/// `e = (1+q) phi` with `phi` in the positive cone.
fn cone_multiple(e: &RankPoly, what: &str) -> Verdict {
    Ok((!e.nonneg_witness()?)
        .then(|| format!("{what}: {e} is not (1+q) times a nonnegative element")))
}

/// Sampled data, serialized only when a sample fails.
struct Record<'a, F> {
    algebra: &'a Arc<FdAlgebra<F>>,
    complexes: Vec<(&'static str, FreeComplex<F>)>,
    maps: Vec<(&'static str, ChainMap<F>)>,
    matrices: Vec<(&'static str, MatrixOverA<F>)>,
}

impl<'a, F: Scalar> Record<'a, F> {
    fn new(algebra: &'a Arc<FdAlgebra<F>>) -> Self {
        Record {
            algebra,
            complexes: Vec::new(),
            maps: Vec::new(),
            matrices: Vec::new(),
        }
    }

    fn complex(&mut self, name: &'static str, x: &FreeComplex<F>) {
        self.complexes.push((name, x.clone()));
    }

    fn map(&mut self, name: &'static str, f: &ChainMap<F>) {
        self.maps.push((name, f.clone()));
    }

    fn matrix(&mut self, name: &'static str, m: &MatrixOverA<F>) {
        self.matrices.push((name, m.clone()));
    }

    fn name_of(&self, x: &FreeComplex<F>) -> &'static str {
        self.complexes
            .iter()
            .find(|(_, c)| c == x)
            .map_or("?", |(n, _)| n)
    }

    fn finish(self, checks: Checks) -> SampleResult {
        let failed = checks.out.iter().any(|o| o.result.is_err());
        let inputs = failed.then(|| {
            let mut v = BTreeMap::new();
            let value = |x: serde_json::Result<serde_json::Value>| x.expect("wire types serialize");
            v.insert(
                "algebra".to_string(),
                value(serde_json::to_value(algebra_to_json(self.algebra))),
            );
            let complexes: BTreeMap<&str, _> = self
                .complexes
                .iter()
                .map(|(n, x)| (*n, complex_to_json(x, "algebra")))
                .collect();
            if !complexes.is_empty() {
                v.insert("complexes".into(), value(serde_json::to_value(complexes)));
            }
            let maps: BTreeMap<&str, _> = self
                .maps
                .iter()
                .map(|(n, f)| {
                    (
                        *n,
                        chain_map_to_json(f, self.name_of(f.source()), self.name_of(f.target())),
                    )
                })
                .collect();
            if !maps.is_empty() {
                v.insert("chain_maps".into(), value(serde_json::to_value(maps)));
            }
            let matrices: BTreeMap<&str, _> = self
                .matrices
                .iter()
                .map(|(n, m)| (*n, matrix_over_a_to_json(m)))
                .collect();
            if !matrices.is_empty() {
                v.insert("matrices".into(), value(serde_json::to_value(matrices)));
            }
            v
        });
        SampleResult {
            outcomes: checks.out,
            inputs,
        }
    }
}

fn check_period(d: Period) -> Result<()> {
    if !d.admits_division() {
        return Err(Error::EvenPeriod(d));
    }
    Ok(())
}

/// O2, Op1, Mp1, M2, M3, Op3, M4, M5, nonnegativity, normalization and
/// `rho(f) <= rho(X), rho(Y)` on triangles `X -> Y -> cone(f) -> Sigma X`.
pub fn check_rank_axioms<F: Scalar>(
    rho: &dyn RankFunction<F>,
    algebra: &Arc<FdAlgebra<F>>,
    d: Period,
    cfg: &SampleConfig,
) -> Result<AxiomReport> {
    check_period(d)?;
    run("rank", rho.name(), Some(d), cfg, |i| {
        rank_sample(rho, algebra, d, cfg, i)
    })
}

pub fn rank_sample<F: Scalar>(
    rho: &dyn RankFunction<F>,
    algebra: &Arc<FdAlgebra<F>>,
    d: Period,
    cfg: &SampleConfig,
    index: u64,
) -> SampleResult {
    let mut rng = sample_rng(cfg.seed, index);
    let s = Sampler::new(algebra, cfg);
    let x = s.complex(&mut rng);
    let y = s.complex(&mut rng);
    let f = s.chain_map(&mut rng, &x, &y);
    let x2 = s.complex(&mut rng);
    let y2 = s.complex(&mut rng);
    let f2 = s.chain_map(&mut rng, &x2, &y2);
    let h = s.chain_map(&mut rng, &x2, &y);
    let w = s.complex(&mut rng);
    let g = s.chain_map(&mut rng, &y, &w);

    let mut rec = Record::new(algebra);
    for (n, c) in [("X", &x), ("Y", &y), ("X2", &x2), ("Y2", &y2), ("W", &w)] {
        rec.complex(n, c);
    }
    for (n, m) in [("f", &f), ("f2", &f2), ("h", &h), ("g", &g)] {
        rec.map(n, m);
    }

    let obj = |c: &FreeComplex<F>| rho.object_rank(c, d);
    let mor = |m: &ChainMap<F>| rho.morphism_rank(m, d);
    let (rx, ry, rf, rf2) = (obj(&x), obj(&y), mor(&f), mor(&f2));
    let cone = f.cone();
    let mut c = Checks::default();

    c.check("nonnegativity", || {
        for r in [&rx, &ry, &rf, &rf2] {
            let r = r.clone()?;
            if !r.is_nonneg() {
                return Ok(Some(format!("negative rank {r}")));
            }
        }
        Ok(None)
    });
    c.check("normalization", || {
        Ok(eq(
            &obj(&FreeComplex::unit(algebra.clone()))?,
            &RankPoly::one(d),
            "rho(A)",
        ))
    });
    c.check("O2", || {
        let sum = rx.clone()?.checked_add(&ry.clone()?)?;
        Ok(eq(&obj(&x.direct_sum(&y)?)?, &sum, "rho(X + Y)"))
    });
    c.check("Op1", || {
        let rx = rx.clone()?;
        Ok(eq(&obj(&x.shift(1))?, &rx.shift(1), "rho(Sigma X)").or(eq(
            &obj(&x.shift(-1))?,
            &rx.shift(-1),
            "rho(Sigma^-1 X)",
        )))
    });
    c.check("Mp1", || {
        Ok(eq(
            &mor(&f.shift(1))?,
            &rf.clone()?.shift(1),
            "rho(Sigma f)",
        ))
    });
    c.check("M2", || {
        Ok(eq(
            &mor(&f.direct_sum(&f2)?)?,
            &rf.clone()?.checked_add(&rf2.clone()?)?,
            "rho(f + f2)",
        ))
    });
    c.check("M3", || {
        let (iota, pi) = (&cone.iota, &cone.pi);
        let (ri, rp) = (mor(iota)?, mor(pi)?);
        let third = mor(&f.shift(1).neg())?;
        Ok(eq(
            &rf.clone()?.checked_add(&ri)?,
            &mor(&ChainMap::identity(&y))?,
            "rho(f) + rho(iota) vs rho(id_Y)",
        )
        .or(eq(
            &ri.checked_add(&rp)?,
            &mor(&ChainMap::identity(&cone.complex))?,
            "rho(iota) + rho(pi) vs rho(id_C)",
        ))
        .or(eq(
            &rp.checked_add(&third)?,
            &mor(&ChainMap::identity(&x.shift(1)))?,
            "rho(pi) + rho(-Sigma f) vs rho(id_SigmaX)",
        )))
    });
    c.check("Op3", || {
        let lhs = rx
            .clone()?
            .checked_sub(&ry.clone()?)?
            .checked_add(&obj(&cone.complex)?)?;
        let connecting = cone.pi.shift(-1);
        let rhs = RankPoly::one_plus_q(d).checked_mul(&mor(&connecting)?)?;
        Ok(eq(
            &lhs,
            &rhs,
            "rho(X) - rho(Y) + rho(C) vs (1+q) rho(connecting)",
        ))
    });
    c.check("M4", || {
        let t = ChainMap::upper_triangular(&f, &h, &f2)?;
        le(
            &rf.clone()?.checked_add(&rf2.clone()?)?,
            &mor(&t)?,
            "rho(f) + rho(f2) vs rho([[f, h], [0, f2]])",
        )
    });
    c.check("M5", || {
        let gf = mor(&f.then(&g)?)?;
        Ok(
            le(&gf, &rf.clone()?, "rho(gf) vs rho(f)")?.or(le(
                &gf,
                &mor(&g)?,
                "rho(gf) vs rho(g)",
            )?),
        )
    });
    c.check("bound", || {
        let rf = rf.clone()?;
        Ok(le(&rf, &rx.clone()?, "rho(f) vs rho(X)")?.or(le(
            &rf,
            &ry.clone()?,
            "rho(f) vs rho(Y)",
        )?))
    });
    rec.finish(c)
}

/// Sum, additivity for rank-zero summands, scalar invariance, fullness, the
/// three inequalities from the triangle `Y -> cone(f) + Z -> cone(gf)`, and
/// `rho(X) <= sum_n rank(X_n) q^n`.
pub fn check_lemma_suite<F: Scalar>(
    rho: &dyn RankFunction<F>,
    algebra: &Arc<FdAlgebra<F>>,
    d: Period,
    cfg: &SampleConfig,
) -> Result<AxiomReport> {
    check_period(d)?;
    run("lemmas", rho.name(), Some(d), cfg, |i| {
        lemma_sample(rho, algebra, d, cfg, i)
    })
}

pub fn lemma_sample<F: Scalar>(
    rho: &dyn RankFunction<F>,
    algebra: &Arc<FdAlgebra<F>>,
    d: Period,
    cfg: &SampleConfig,
    index: u64,
) -> SampleResult {
    let mut rng = sample_rng(cfg.seed, index);
    let s = Sampler::new(algebra, cfg);
    let x = s.complex(&mut rng);
    let y = s.complex(&mut rng);
    let z = s.complex(&mut rng);
    let f = s.chain_map(&mut rng, &x, &y);
    let f1 = s.chain_map(&mut rng, &x, &y);
    let g = s.chain_map(&mut rng, &y, &z);
    let null = s.null_homotopic(&mut rng, &x, &y);
    let alpha = s.unit_scalar(&mut rng);
    let iso = s.automorphism(&mut rng, &x);
    let iso_z = s.automorphism(&mut rng, &z);
    let x2 = x.conjugate(&iso).expect("invertible conjugation");
    let z2 = z.conjugate(&iso_z).expect("invertible conjugation");
    let p = ChainMap::from_parts_unchecked(
        x.clone(),
        x2.clone(),
        iso.iter().map(|(&n, (m, _))| (n, m.clone())),
    );
    let pz = ChainMap::from_parts_unchecked(
        z.clone(),
        z2.clone(),
        iso_z.iter().map(|(&n, (m, _))| (n, m.clone())),
    );
    let k = s.chain_map(&mut rng, &x2, &z);
    let k0 = s.chain_map(&mut rng, &x, &z);
    let use_identity = rng.gen_bool(0.25);

    let mut rec = Record::new(algebra);
    for (n, c) in [("X", &x), ("Y", &y), ("Z", &z), ("X2", &x2), ("Z2", &z2)] {
        rec.complex(n, c);
    }
    for (n, m) in [
        ("f", &f),
        ("f1", &f1),
        ("g", &g),
        ("null", &null),
        ("p", &p),
        ("pz", &pz),
        ("k", &k),
        ("k0", &k0),
    ] {
        rec.map(n, m);
    }

    let obj = |c: &FreeComplex<F>| rho.object_rank(c, d);
    let mor = |m: &ChainMap<F>| rho.morphism_rank(m, d);
    let rf = mor(&f);
    let mut c = Checks::default();

    c.check("sum", || {
        let bound = rf.clone()?.checked_add(&mor(&f1)?)?;
        le(
            &mor(&f.add(&f1)?)?,
            &bound,
            "rho(f + f1) vs rho(f) + rho(f1)",
        )
    });
    c.check("additive", || {
        let rn = mor(&null)?;
        if !rn.is_zero() {
            return Ok(Some(format!("null-homotopic map has rank {rn}")));
        }
        Ok(eq(
            &mor(&f.add(&null)?)?,
            &rf.clone()?,
            "rho(f + g) with rho(g) = 0",
        ))
    });
    c.check("scalar", || {
        let rf = rf.clone()?;
        Ok(
            eq(&mor(&f.neg())?, &rf, "rho(-f)").or(eq(
                &mor(&f.scale(&alpha))?,
                &rf,
                "rho(alpha f)",
            )),
        )
    });
    c.check("full-triangle", || {
        let cone = f.cone();
        let (rx, ry, rf) = (obj(&x)?, obj(&y)?, rf.clone()?);
        let rc = obj(&cone.complex)?;
        let rh = mor(&cone.pi.shift(-1))?;
        let ri = mor(&cone.iota)?;
        let left_full = rf == rx;
        let right_full_iota = ri == rc;
        let full = rf == rx && rf == ry;
        if left_full != rh.is_zero() || right_full_iota != rh.is_zero() {
            return Ok(Some(format!(
                "left full {left_full}, iota right full {right_full_iota}, connecting rank {rh}"
            )));
        }
        Ok((full != rc.is_zero()).then(|| format!("full {full} but rho(cone) = {rc}")))
    });
    c.check("full-composition", || {
        let (pre, post, k) = if use_identity {
            (ChainMap::identity(&x), ChainMap::identity(&z), &k0)
        } else {
            (p.clone(), pz.clone(), &k)
        };
        let rk = mor(k)?;
        Ok(eq(&mor(&pre.then(k)?)?, &rk, "rho(k p) with p full").or(eq(
            &mor(&k.then(&post)?)?,
            &rk,
            "rho(q k) with q full",
        )))
    });
    c.check("octahedral", || {
        let gf = f.then(&g)?;
        let a = obj(&y)?;
        let b = obj(&f.cone().complex.direct_sum(&z)?)?;
        let cgf = obj(&gf.cone().complex)?;
        let e1 = a.checked_add(&cgf)?.checked_sub(&b)?;
        let e2 = b.checked_add(&a.shift(1))?.checked_sub(&cgf)?;
        let e3 = cgf.checked_add(&b.shift(1))?.checked_sub(&a.shift(1))?;
        Ok(cone_multiple(&e1, "rho(Y) + rho(C(gf)) - rho(C(f) + Z)")?
            .or(cone_multiple(&e2, "rho(C(f) + Z) + q rho(Y) - rho(C(gf))")?)
            .or(cone_multiple(
                &e3,
                "rho(C(gf)) + q rho(C(f) + Z) - q rho(Y)",
            )?))
    });
    c.check("termwise-bound", || {
        let bound = RankPoly::normalize(
            x.ranks()
                .iter()
                .map(|(&n, &r)| (n, Rational::from_integer(r.into()))),
            d,
        );
        le(&obj(&x)?, &bound, "rho(X) vs sum rank(X_n) q^n")
    });
    rec.finish(c)
}

/// m1 to m4 on random matrices, and o1 to o3 on modules given by random
/// presentations `A^p -> A^g`.
pub fn check_sylvester_axioms<F: Scalar>(
    rho: &dyn MatrixRank<F>,
    algebra: &Arc<FdAlgebra<F>>,
    name: &str,
    cfg: &SampleConfig,
) -> Result<AxiomReport> {
    run("sylvester", name.into(), None, cfg, |i| {
        sylvester_sample(rho, algebra, cfg, i)
    })
}

pub fn sylvester_sample<F: Scalar>(
    rho: &dyn MatrixRank<F>,
    algebra: &Arc<FdAlgebra<F>>,
    cfg: &SampleConfig,
    index: u64,
) -> SampleResult {
    let mut rng = sample_rng(cfg.seed, index);
    let s = Sampler::new(algebra, cfg);
    let (a, b, c2, g_rows, p, q) = (
        s.size(&mut rng),
        s.size(&mut rng),
        s.size(&mut rng),
        s.size(&mut rng),
        s.size(&mut rng),
        s.size(&mut rng),
    );
    let f = s.matrix(&mut rng, b, a);
    let g = s.matrix(&mut rng, c2, b);
    let e = s.matrix(&mut rng, g_rows, p);
    let h = s.matrix(&mut rng, b, q);
    let gq = s.matrix(&mut rng, c2, q);
    // presentation data
    let pf = s.matrix(&mut rng, g_rows, p);
    let pg = s.matrix(&mut rng, g_rows, q);
    let preimage = preimage_basis(&pg, &pf);
    let t = rng.gen_range(0..=2usize);
    let mut cols = Vec::new();
    for _ in 0..t {
        let mut v = vec![F::zero(); q * algebra.dim()];
        for basis in &preimage {
            if rng.gen_bool(cfg.density) {
                let c = s.small(&mut rng);
                for (vi, bi) in v.iter_mut().zip(basis) {
                    *vi = vi.clone() + c.clone() * bi.clone();
                }
            }
        }
        cols.push(v);
    }
    let m = algebra.dim();
    let ph = MatrixOverA::from_fn(algebra.clone(), q, cols.len(), |i, j| {
        cols[j][i * m..(i + 1) * m].to_vec()
    });

    let mut rec = Record::new(algebra);
    for (n, x) in [
        ("F", &f),
        ("G", &g),
        ("E", &e),
        ("H", &h),
        ("G2", &gq),
        ("P", &pf),
        ("Q", &pg),
        ("K", &ph),
    ] {
        rec.matrix(n, x);
    }

    let r = |x: &MatrixOverA<F>| rho.matrix_rank(x);
    let int = |n: usize| Rational::from_integer(n.into());
    let mut c = Checks::default();

    c.check("nonnegativity", || {
        let rf = r(&f)?;
        Ok((rf < int(0) || rf > int(a.min(b)))
            .then(|| format!("rho(F) = {rf} for a {b}x{a} matrix")))
    });
    c.check("m1", || {
        Ok(eq(
            &r(&MatrixOverA::identity(algebra.clone(), 1))?,
            &int(1),
            "rho(id_A)",
        ))
    });
    c.check("m2", || {
        Ok(eq(
            &r(&MatrixOverA::block_diag(&f, &e)?)?,
            &(r(&f)? + r(&e)?),
            "rho(F + E)",
        ))
    });
    c.check("m3", || {
        let t = MatrixOverA::blocks(
            algebra,
            &[
                vec![f.clone(), h.clone()],
                vec![MatrixOverA::zeros(algebra.clone(), c2, a), gq.clone()],
            ],
        )?;
        Ok(le_q(
            &(r(&f)? + r(&gq)?),
            &r(&t)?,
            "rho(F) + rho(G) vs rho([[F, H], [0, G]])",
        ))
    });
    c.check("m4", || {
        let gf = r(&g.mul(&f)?)?;
        Ok(le_q(&gf, &r(&f)?, "rho(GF) vs rho(F)").or(le_q(&gf, &r(&g)?, "rho(GF) vs rho(G)")))
    });
    let module = |x: &MatrixOverA<F>| -> Result<Rational> { Ok(int(x.rows()) - r(x)?) };
    c.check("o1", || {
        Ok(eq(
            &module(&MatrixOverA::zeros(algebra.clone(), 1, 0))?,
            &int(1),
            "rho(A)",
        ))
    });
    c.check("o2", || {
        let sum = MatrixOverA::block_diag(&pf, &e)?;
        Ok(eq(
            &module(&sum)?,
            &(module(&pf)? + module(&e)?),
            "rho(M + N)",
        ))
    });
    c.check("o3", || {
        // L = coker K -> M = coker P -> N = coker [P | Q] -> 0
        let rl = module(&ph)?;
        let rm = module(&pf)?;
        let rn = module(&MatrixOverA::blocks(
            algebra,
            &[vec![pf.clone(), pg.clone()]],
        )?)?;
        Ok(le_q(&rn, &rm, "rho(N) vs rho(M)").or(le_q(
            &rm,
            &(rl + rn.clone()),
            "rho(M) vs rho(L) + rho(N)",
        )))
    });
    rec.finish(c)
}

/// A ground-field basis of `{x in A^q : G x in im P}`, as coordinate vectors.
fn preimage_basis<F: Scalar>(g: &MatrixOverA<F>, p: &MatrixOverA<F>) -> Vec<Vec<F>> {
    let gk = g.to_ground();
    let pk = p.to_ground();
    let stacked = Matrix::hstack(&gk, &pk).expect("same number of rows");
    let span: Vec<Vec<F>> = stacked
        .kernel_basis()
        .into_iter()
        .map(|v| v[..gk.cols()].to_vec())
        .collect();
    let keep = crate::linal::independent_subset(gk.cols(), &span);
    keep.into_iter().map(|i| span[i].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fdalg::hom::tests::{augmentation, loc_m2};
    use crate::fdalg::tests::{two_cycle, Q};
    use crate::rank::{Corrupted, CorruptedMatrixRank, SylvesterRank};
    use crate::scalar::rational;

    fn cfg(samples: usize, seed: u64) -> SampleConfig {
        SampleConfig {
            seed,
            samples,
            ..SampleConfig::default()
        }
    }

    fn homs() -> (Arc<FdAlgebra<Q>>, Vec<SylvesterRank<Q>>) {
        let a = Arc::new(two_cycle());
        let s = vec![
            SylvesterRank::new(loc_m2(a.clone())).unwrap(),
            SylvesterRank::new(augmentation(a.clone())).unwrap(),
        ];
        (a, s)
    }

    #[test]
    fn rank_axioms_hold() {
        let (a, homs) = homs();
        for s in &homs {
            for d in [Period::Infinite, Period::Finite(1), Period::Finite(3)] {
                let r = check_rank_axioms(s, &a, d, &cfg(12, 3)).unwrap();
                assert!(r.all_pass(), "{:?}", r.first_counterexample);
                assert_eq!(r.tally("M3").unwrap().passed, 12);
            }
        }
    }

    #[test]
    fn even_period_is_refused() {
        let (a, homs) = homs();
        assert!(matches!(
            check_rank_axioms(&homs[0], &a, Period::Finite(2), &cfg(1, 0)),
            Err(Error::EvenPeriod(_))
        ));
    }

    #[test]
    fn lemmas_hold() {
        let (a, homs) = homs();
        for s in &homs {
            let r = check_lemma_suite(s, &a, Period::Infinite, &cfg(12, 5)).unwrap();
            assert!(r.all_pass(), "{:?}", r.first_counterexample);
        }
    }

    #[test]
    fn sylvester_axioms_hold() {
        let (a, homs) = homs();
        for s in &homs {
            let r = check_sylvester_axioms(s, &a, "s", &cfg(40, 1)).unwrap();
            assert!(r.all_pass(), "{:?}", r.first_counterexample);
        }
    }

    #[test]
    fn corrupted_identity_is_caught_and_replays() {
        let (a, homs) = homs();
        let bad = Corrupted {
            inner: &homs[0],
            target: FreeComplex::unit(a.clone()),
            factor: rational(2, 1),
        };
        let c = cfg(40, 11);
        let r = check_rank_axioms(&bad, &a, Period::Infinite, &c).unwrap();
        assert!(r.tally("M3").unwrap().failed > 0);
        let ce = r.first_counterexample.unwrap();
        assert!(ce.inputs.contains_key("complexes"));
        let replay = rank_sample(&bad, &a, Period::Infinite, &c, ce.sample);
        assert!(replay.failures().any(|o| o.axiom == ce.axiom));
    }

    #[test]
    fn corrupted_matrix_rank_is_caught() {
        let (a, homs) = homs();
        let bad = CorruptedMatrixRank {
            inner: &homs[1],
            size: 1,
            factor: rational(2, 1),
        };
        let r = check_sylvester_axioms(&bad, &a, "bad", &cfg(10, 0)).unwrap();
        assert_eq!(r.tally("m1").unwrap().failed, 10);
    }

    #[test]
    fn reports_are_deterministic() {
        let (a, homs) = homs();
        let c = cfg(8, 42);
        let r1 = check_rank_axioms(&homs[0], &a, Period::Finite(1), &c).unwrap();
        let r2 = check_rank_axioms(&homs[0], &a, Period::Finite(1), &c).unwrap();
        assert_eq!(
            serde_json::to_string(&r1).unwrap(),
            serde_json::to_string(&r2).unwrap()
        );
    }
}
