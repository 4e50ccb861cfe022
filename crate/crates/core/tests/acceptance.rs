//! End-to-end checks on the worked examples and the exhaustive property
//! suites. Runs without the test harness and prints one line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use perfrank::axioms::{
    check_rank_axioms, check_sylvester_axioms, sample_rng, SampleConfig, Sampler,
};
use perfrank::fdalg::{local_matrix_rank_of, FdAlgebra, MatAlgebraHom, MatrixOverA};
use perfrank::homalg::{homological_epi_check, tor_dims, FdModule, Side};
use perfrank::linal::Matrix;
use perfrank::perf::{ChainMap, FreeComplex, IdempotentObject};
use perfrank::rank::{
    full_square_submatrix, localizing_diagnostic, Corrupted, CorruptedMatrixRank, SylvesterRank,
    WitnessSource,
};
use perfrank::{CoeffPoly, Period, RankPoly, Rational};

type Q = Rational;

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn labels(ls: &[&str]) -> Vec<String> {
    ls.iter().map(|s| s.to_string()).collect()
}

/// Two vertices, arrows `a1: 1 -> 2`, `a2: 2 -> 1`, both composites zero.
fn two_cycle() -> Arc<FdAlgebra<Q>> {
    let t = [
        (0, 0, 0),
        (1, 1, 1),
        (2, 0, 2),
        (1, 2, 2),
        (0, 3, 3),
        (3, 1, 3),
    ];
    let a = FdAlgebra::from_structure_constants(
        labels(&["e1", "e2", "a1", "a2"]),
        vec![q(1), q(1), q(0), q(0)],
        t.iter().map(|&(i, j, k)| (i, j, k, q(1))),
    )
    .unwrap();
    Arc::new(a)
}

fn unit_matrix(n: usize, i: usize, j: usize) -> Matrix<Q> {
    let mut m = Matrix::zeros(n, n);
    m[(i, j)] = q(1);
    m
}

fn loc_m2(a: &Arc<FdAlgebra<Q>>) -> MatAlgebraHom<Q> {
    let images = vec![
        unit_matrix(2, 0, 0),
        unit_matrix(2, 1, 1),
        Matrix::zeros(2, 2),
        unit_matrix(2, 0, 1),
    ];
    MatAlgebraHom::new(a.clone(), 2, images).unwrap()
}

fn augmentation(a: &Arc<FdAlgebra<Q>>) -> MatAlgebraHom<Q> {
    let images = vec![
        Matrix::identity(1),
        Matrix::zeros(1, 1),
        Matrix::zeros(1, 1),
        Matrix::zeros(1, 1),
    ];
    MatAlgebraHom::new(a.clone(), 1, images).unwrap()
}

fn scalars(vs: &[i64]) -> Vec<Matrix<Q>> {
    vs.iter()
        .map(|&v| Matrix::from_rows(vec![vec![q(v)]]).unwrap())
        .collect()
}

/// The monoid `{1, x_ij}` with `x_ij x_kl = x_il`.
fn fiedorowicz() -> Arc<FdAlgebra<Q>> {
    let mut t = vec![(0, 0, 0)];
    for i in 1..5 {
        t.push((0, i, i));
        t.push((i, 0, i));
    }
    let idx = |i: usize, j: usize| 1 + 2 * i + j;
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    t.push((idx(i, j), idx(k, l), idx(i, l)));
                }
            }
        }
    }
    let a = FdAlgebra::from_structure_constants(
        labels(&["1", "x11", "x12", "x21", "x22"]),
        vec![q(1), q(0), q(0), q(0), q(0)],
        t.into_iter().map(|(i, j, k)| (i, j, k, q(1))),
    )
    .unwrap();
    Arc::new(a)
}

fn dual_numbers() -> Arc<FdAlgebra<Q>> {
    let a = FdAlgebra::from_structure_constants(
        labels(&["1", "alpha"]),
        vec![q(1), q(0)],
        [(0, 0, 0, q(1)), (0, 1, 1, q(1)), (1, 0, 1, q(1))],
    )
    .unwrap();
    Arc::new(a)
}

fn cfg(samples: usize, seed: u64) -> SampleConfig {
    SampleConfig {
        seed,
        samples,
        ..SampleConfig::default()
    }
}

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn small_example_localizing() -> Check {
    let a = two_cycle();
    let sigma = SylvesterRank::new(loc_m2(&a)).unwrap();
    let e = homological_epi_check(sigma.hom(), 6).unwrap();
    ensure(
        e.tensor_dim == 4 && e.mult_iso,
        format!("tensor_dim {} mult_iso {}", e.tensor_dim, e.mult_iso),
    )?;
    ensure(
        e.tor_vanishing == vec![0; 6],
        format!("Tor_1..6 = {:?}", e.tor_vanishing),
    )?;

    let x = FreeComplex::two_term(&MatrixOverA::single(a.clone(), a.basis(3)), 1);
    let e1 = MatrixOverA::single(a.clone(), a.basis(0));
    let e2 = MatrixOverA::single(a.clone(), a.basis(1));
    let tau =
        IdempotentObject::new(ChainMap::new(x.clone(), x, [(0, e1), (1, e2)]).unwrap()).unwrap();
    let r = sigma.idempotent_rank(&tau, Period::Infinite).unwrap();
    ensure(r.is_zero(), format!("rank of the summand {r}"))?;

    let l = localizing_diagnostic(&sigma, 6).unwrap();
    ensure(
        l.conclusion == "consistent with localizing to depth 6",
        l.conclusion.clone(),
    )?;
    Ok("tensor_dim 4, Tor_1..6 = 0, summand rank 0, consistent to depth 6".into())
}

fn small_example_augmentation() -> Check {
    let a = two_cycle();
    let act = scalars(&[1, 0, 0, 0]);
    let s1 = FdModule::new(a.clone(), Side::Right, 1, act.clone()).unwrap();
    let s1_left = FdModule::new(a.clone(), Side::Left, 1, act).unwrap();
    let dims = tor_dims(&s1, &s1_left, 6).unwrap();
    ensure(
        dims == vec![1, 0, 1, 0, 1, 0, 1],
        format!("tor_dims {dims:?}"),
    )?;
    let l = localizing_diagnostic(&SylvesterRank::new(augmentation(&a)).unwrap(), 6).unwrap();
    ensure(
        !l.localizing && l.epi.first_obstruction == Some(2),
        l.conclusion.clone(),
    )?;
    Ok(format!("tor_dims(S1, S1, 6) = {dims:?}, {}", l.conclusion))
}

fn fiedorowicz_monoid() -> Check {
    let m = fiedorowicz();
    let act = scalars(&[1, 1, 1, 1, 1]);
    let k = FdModule::new(m.clone(), Side::Right, 1, act.clone()).unwrap();
    let k_left = FdModule::new(m, Side::Left, 1, act).unwrap();
    let dims = tor_dims(&k, &k_left, 4).unwrap();
    ensure(dims == vec![1, 0, 1, 0, 0], format!("tor_dims {dims:?}"))?;
    Ok(format!("tor_dims(k, k, 4) = {dims:?}"))
}

fn sylvester_derived_correspondence() -> Check {
    let a = two_cycle();
    let c = cfg(0, 0);
    let s = Sampler::new(&a, &c);
    let mut count = 0;
    for phi in [loc_m2(&a), augmentation(&a)] {
        let sigma = SylvesterRank::new(phi).unwrap();
        for i in 0..250 {
            let mut rng = sample_rng(404, i);
            let (r, k) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
            let f = s.matrix(&mut rng, r, k);
            let map = ChainMap::new(
                FreeComplex::concentrated(a.clone(), k, 0),
                FreeComplex::concentrated(a.clone(), r, 0),
                [(0, f.clone())],
            )
            .unwrap();
            let derived = sigma.derived_morphism_rank(&map, Period::Infinite).unwrap();
            let syl = sigma.sylvester_morphism_rank(&f).unwrap();
            ensure(
                derived == RankPoly::constant(syl.clone(), Period::Infinite),
                format!("sample {i}: derived {derived}, Sylvester {syl}"),
            )?;
            count += 1;
        }
    }
    Ok(format!("{count} matrices agree exactly"))
}

fn axiom_suites() -> Check {
    let a = two_cycle();
    let homs = [
        ("loc-m2", SylvesterRank::new(loc_m2(&a)).unwrap()),
        ("aug", SylvesterRank::new(augmentation(&a)).unwrap()),
    ];
    let c = cfg(200, 2024);
    for (name, sigma) in &homs {
        for d in [Period::Finite(1), Period::Finite(3), Period::Infinite] {
            let r = check_rank_axioms(sigma, &a, d, &c).unwrap();
            ensure(
                r.all_pass(),
                format!("{name} at period {d}: {:?}", r.first_counterexample),
            )?;
            ensure(
                r.tallies.iter().all(|t| t.passed == 200),
                format!("{name} at period {d}: incomplete tallies"),
            )?;
        }
        let r = check_sylvester_axioms(sigma, &a, name, &c).unwrap();
        ensure(
            r.all_pass(),
            format!("{name} Sylvester axioms: {:?}", r.first_counterexample),
        )?;
    }

    let bad = Corrupted {
        inner: &homs[0].1,
        target: FreeComplex::unit(a.clone()),
        factor: q(2),
    };
    let r = check_rank_axioms(&bad, &a, Period::Infinite, &cfg(50, 1)).unwrap();
    ensure(!r.all_pass(), "corrupted rank function not detected")?;
    let bad = CorruptedMatrixRank {
        inner: &homs[1].1,
        size: 1,
        factor: q(2),
    };
    let r2 = check_sylvester_axioms(&bad, &a, "bad", &cfg(50, 1)).unwrap();
    ensure(!r2.all_pass(), "corrupted matrix rank not detected")?;
    Ok(format!(
        "200 samples pass for both homs at periods 1, 3, inf; faults caught by {:?} and {:?}",
        r.failed_axioms(),
        r2.failed_axioms()
    ))
}

fn exactness_and_invariance() -> Check {
    let a = two_cycle();
    let c = cfg(0, 0);
    let s = Sampler::new(&a, &c);
    for phi in [loc_m2(&a), augmentation(&a)] {
        let sigma = SylvesterRank::new(phi).unwrap();
        for i in 0..50 {
            let mut rng = sample_rng(77, i);
            let z = s.contractible(&mut rng);
            let rz = sigma.derived_object_rank(&z).unwrap();
            ensure(
                rz.is_zero(),
                format!("contractible sample {i} has rank {rz}"),
            )?;

            let x = s.complex(&mut rng);
            let rx = sigma.derived_object_rank(&x).unwrap();
            let sum = x.direct_sum(&s.contractible(&mut rng)).unwrap();
            ensure(
                sigma.derived_object_rank(&sum).unwrap() == rx,
                format!("sample {i}: contractible summand changes the rank"),
            )?;
            let conj = x.conjugate(&s.automorphism(&mut rng, &x)).unwrap();
            ensure(
                sigma.derived_object_rank(&conj).unwrap() == rx,
                format!("sample {i}: conjugation changes the rank"),
            )?;
        }
    }
    Ok(
        "50 contractible complexes have rank 0; summands and conjugation leave ranks unchanged"
            .into(),
    )
}

/// `rank_K Phi(N) / n` computed from the ground matrix alone.
fn ground_rank(sigma: &SylvesterRank<Q>, n: &MatrixOverA<Q>) -> Q {
    Q::new(
        (n.base_change(sigma.hom()).unwrap().rank() as i64).into(),
        (sigma.n() as i64).into(),
    )
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (k - 1..n)
        .flat_map(|last| {
            subsets(last, k - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

fn local_rank_and_witnesses() -> Check {
    let d = dual_numbers();
    let residue =
        SylvesterRank::new(MatAlgebraHom::new(d.clone(), 1, scalars(&[1, 0])).unwrap()).unwrap();
    let c = cfg(0, 0);
    let s = Sampler::new(&d, &c);
    for i in 0..120 {
        let mut rng = sample_rng(5, i);
        let (r, k) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let m = s.matrix(&mut rng, r, k);
        let local = local_matrix_rank_of(&d, &m).unwrap();
        let syl = residue.sylvester_morphism_rank(&m).unwrap();
        let constant_part = Matrix::from_rows(
            (0..r)
                .map(|i| (0..k).map(|j| m.get(i, j)[0].clone()).collect())
                .collect(),
        )
        .unwrap();
        ensure(
            local == syl && syl == q(constant_part.rank() as i64),
            format!("sample {i}: local {local}, Sylvester {syl}"),
        )?;
    }

    let a = two_cycle();
    let s2 = Sampler::new(&a, &c);
    let cases = [
        (d.clone(), residue),
        (a.clone(), SylvesterRank::new(loc_m2(&a)).unwrap()),
        (a.clone(), SylvesterRank::new(augmentation(&a)).unwrap()),
    ];
    let mut witnesses = 0;
    for (case, (alg, sigma)) in cases.iter().enumerate() {
        let sampler = if Arc::ptr_eq(alg, &d) { &s } else { &s2 };
        for r in 1..=5 {
            for k in 1..=5 {
                for i in 0..4 {
                    let mut rng = sample_rng(900 + case as u64, (r * 100 + k * 10 + i) as u64);
                    let f = sampler.matrix(&mut rng, r, k);
                    let rho = sigma.sylvester_morphism_rank(&f).unwrap();
                    let w = full_square_submatrix(sigma, &f).unwrap();
                    ensure(
                        w.rows.len() == w.cols.len() && w.rank == rho,
                        format!("{r}x{k}: witness rank {} vs {rho}", w.rank),
                    )?;
                    let check = match w.source {
                        WitnessSource::OverA => {
                            let n = f.submatrix(&w.rows, &w.cols);
                            let best = (1..=r.min(k))
                                .flat_map(|j| {
                                    subsets(r, j).into_iter().flat_map(move |rs| {
                                        subsets(k, j).into_iter().map(move |cs| (rs.clone(), cs))
                                    })
                                })
                                .map(|(rs, cs)| ground_rank(sigma, &f.submatrix(&rs, &cs)))
                                .max()
                                .unwrap_or_else(|| q(0));
                            ground_rank(sigma, &n) == rho
                                && q(w.rows.len() as i64) == rho
                                && best == rho
                        }
                        WitnessSource::BaseChanged => {
                            let g = f.base_change(sigma.hom()).unwrap();
                            let rows: Vec<Vec<Q>> = w
                                .rows
                                .iter()
                                .map(|&i| w.cols.iter().map(|&j| g[(i, j)].clone()).collect())
                                .collect();
                            let sub = Matrix::from_rows(rows).unwrap();
                            sub.rank() == w.rows.len()
                                && Q::new((sub.rank() as i64).into(), (sigma.n() as i64).into())
                                    == rho
                        }
                    };
                    ensure(check, format!("{r}x{k}: witness does not realize the rank"))?;
                    if Arc::ptr_eq(alg, &d) {
                        ensure(
                            w.source == WitnessSource::OverA,
                            "local algebra needs a witness over A",
                        )?;
                    }
                    witnesses += 1;
                }
            }
        }
    }
    Ok(format!("120 local ranks agree; {witnesses} submatrix witnesses on every shape up to 5x5, maximal over all square submatrices"))
}

fn random_poly(rng: &mut ChaCha8Rng, nonneg: bool) -> CoeffPoly<Q> {
    let terms: Vec<(i64, Q)> = (0..rng.gen_range(0..=5))
        .map(|_| {
            let num: i64 = if nonneg {
                rng.gen_range(0..=6)
            } else {
                rng.gen_range(-6..=6)
            };
            (
                rng.gen_range(-4..=4),
                Q::new(num.into(), rng.gen_range(1i64..=3).into()),
            )
        })
        .collect();
    CoeffPoly::normalize(terms, Period::Infinite)
}

fn coefficient_ring() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..500 {
        let phi = random_poly(&mut rng, true);
        let inf = CoeffPoly::one_plus_q(Period::Infinite)
            .checked_mul(&phi)
            .unwrap();
        ensure(
            inf.divide_q_plus_1().unwrap() == Some(phi.clone()),
            format!("sample {i}: division at inf"),
        )?;
        let d = Period::Finite(2 * rng.gen_range(0..=4) + 1);
        let phi_d = phi.reduce_period(d).unwrap();
        let prod = CoeffPoly::one_plus_q(d).checked_mul(&phi_d).unwrap();
        ensure(
            prod.divide_q_plus_1().unwrap() == Some(phi_d),
            format!("sample {i}: division at {d}"),
        )?;
    }
    for i in 0..500 {
        let (x, y) = (random_poly(&mut rng, false), random_poly(&mut rng, false));
        let d = Period::Finite(rng.gen_range(1..=9));
        let red = |p: &CoeffPoly<Q>| p.reduce_period(d).unwrap();
        ensure(
            red(&x.checked_add(&y).unwrap()) == red(&x).checked_add(&red(&y)).unwrap(),
            format!("sample {i}: sum"),
        )?;
        ensure(
            red(&x.checked_mul(&y).unwrap()) == red(&x).checked_mul(&red(&y)).unwrap(),
            format!("sample {i}: product"),
        )?;
        ensure(
            red(&CoeffPoly::one(Period::Infinite)) == CoeffPoly::one(d),
            "unit",
        )?;
        let z = random_poly(&mut rng, true);
        ensure(red(&z).is_nonneg(), format!("sample {i}: cone"))?;
        if let Period::Finite(n) = d {
            let e = Period::Finite(
                (1..=n)
                    .filter(|k| n % k == 0)
                    .nth(rng.gen_range(0..(1..=n).filter(|k| n % k == 0).count()))
                    .unwrap(),
            );
            let chain = red(&x).reduce_period(e).unwrap();
            ensure(
                chain == x.reduce_period(e).unwrap(),
                format!("sample {i}: reductions compose"),
            )?;
        }
    }
    Ok("500 division round trips and 500 reduction pairs".into())
}

type Criterion = (&'static str, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("small example, localizing branch", small_example_localizing),
        (
            "small example, non-localizing branch",
            small_example_augmentation,
        ),
        ("Fiedorowicz monoid", fiedorowicz_monoid),
        (
            "Sylvester and derived ranks agree",
            sylvester_derived_correspondence,
        ),
        ("axiom suites and fault injection", axiom_suites),
        ("exactness and invariance", exactness_and_invariance),
        (
            "local matrix rank and submatrix witnesses",
            local_rank_and_witnesses,
        ),
        ("coefficient ring", coefficient_ring),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
