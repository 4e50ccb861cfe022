use std::sync::Arc;

use proptest::prelude::*;

use perfrank::axioms::{sample_rng, SampleConfig, Sampler};
use perfrank::fdalg::{
    local_matrix_rank_of, radical_and_residue, FdAlgebra, MatAlgebraHom, MatrixOverA,
};
use perfrank::homalg::{tensor_dim, tor_dims, FdModule, Side};
use perfrank::linal::Matrix;
use perfrank::perf::{FieldComplex, FreeComplex};
use perfrank::rank::{graded_dimension_rank, RankFunction, SylvesterRank};
use perfrank::{CoeffPoly, Period, RankPoly, Rational};

type Q = Rational;

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn two_cycle() -> Arc<FdAlgebra<Q>> {
    let t = [
        (0, 0, 0),
        (1, 1, 1),
        (2, 0, 2),
        (1, 2, 2),
        (0, 3, 3),
        (3, 1, 3),
    ];
    let labels = ["e1", "e2", "a1", "a2"].map(String::from).to_vec();
    Arc::new(
        FdAlgebra::from_structure_constants(
            labels,
            vec![q(1), q(1), q(0), q(0)],
            t.iter().map(|&(i, j, k)| (i, j, k, q(1))),
        )
        .unwrap(),
    )
}

/// `k[x]/(x^3)`, a local algebra with a two-step radical.
fn truncated_poly() -> Arc<FdAlgebra<Q>> {
    let labels = ["1", "x", "x2"].map(String::from).to_vec();
    let t = [
        (0, 0, 0),
        (0, 1, 1),
        (1, 0, 1),
        (0, 2, 2),
        (2, 0, 2),
        (1, 1, 2),
    ];
    Arc::new(
        FdAlgebra::from_structure_constants(
            labels,
            vec![q(1), q(0), q(0)],
            t.iter().map(|&(i, j, k)| (i, j, k, q(1))),
        )
        .unwrap(),
    )
}

fn unit_matrix(n: usize, i: usize, j: usize) -> Matrix<Q> {
    let mut m = Matrix::zeros(n, n);
    m[(i, j)] = q(1);
    m
}

fn homs(a: &Arc<FdAlgebra<Q>>) -> Vec<MatAlgebraHom<Q>> {
    vec![
        MatAlgebraHom::new(
            a.clone(),
            2,
            vec![
                unit_matrix(2, 0, 0),
                unit_matrix(2, 1, 1),
                Matrix::zeros(2, 2),
                unit_matrix(2, 0, 1),
            ],
        )
        .unwrap(),
        MatAlgebraHom::new(
            a.clone(),
            1,
            vec![
                Matrix::identity(1),
                Matrix::zeros(1, 1),
                Matrix::zeros(1, 1),
                Matrix::zeros(1, 1),
            ],
        )
        .unwrap(),
    ]
}

fn poly(nonneg: bool, period: Period) -> impl Strategy<Value = CoeffPoly<Q>> {
    let num = if nonneg { 0i64..=5 } else { -5i64..=5 };
    proptest::collection::vec((-4i64..=4, num, 1i64..=3), 0..6).prop_map(move |ts| {
        CoeffPoly::normalize(
            ts.into_iter()
                .map(|(e, n, d)| (e, Q::new(n.into(), d.into()))),
            period,
        )
    })
}

fn finite_period() -> impl Strategy<Value = Period> {
    (1u64..=9).prop_map(Period::Finite)
}

proptest! {
    #[test]
    fn normalize_is_idempotent(p in poly(false, Period::Infinite), d in finite_period()) {
        let raw: Vec<(i64, Q)> = p.terms().map(|(e, c)| (e, c.clone())).collect();
        prop_assert_eq!(CoeffPoly::normalize(raw.clone(), Period::Infinite), p.clone());
        let once = CoeffPoly::normalize(raw, d);
        let twice = CoeffPoly::normalize(once.terms().map(|(e, c)| (e, c.clone())), d);
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn cone_is_closed(a in poly(true, Period::Infinite), b in poly(true, Period::Infinite)) {
        prop_assert!(a.checked_add(&b).unwrap().is_nonneg());
        prop_assert!(a.checked_mul(&b).unwrap().is_nonneg());
    }

    #[test]
    fn reduction_is_a_ring_hom(a in poly(false, Period::Infinite), b in poly(false, Period::Infinite), d in finite_period()) {
        let r = |p: &CoeffPoly<Q>| p.reduce_period(d).unwrap();
        prop_assert_eq!(r(&a.checked_add(&b).unwrap()), r(&a).checked_add(&r(&b)).unwrap());
        prop_assert_eq!(r(&a.checked_mul(&b).unwrap()), r(&a).checked_mul(&r(&b)).unwrap());
    }

    #[test]
    fn reduction_detects_zero_on_the_cone(a in poly(true, Period::Infinite), d in finite_period()) {
        let r = a.reduce_period(d).unwrap();
        prop_assert!(r.is_nonneg());
        prop_assert_eq!(r.is_zero(), a.is_zero());
    }

    #[test]
    fn division_round_trips(phi in poly(true, Period::Infinite)) {
        let prod = CoeffPoly::one_plus_q(Period::Infinite).checked_mul(&phi).unwrap();
        prop_assert_eq!(prod.divide_q_plus_1().unwrap(), Some(phi));
        prop_assert!(prod.nonneg_witness().unwrap());
    }
}

fn sample_config() -> SampleConfig {
    SampleConfig::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cones_shifts_and_sums(seed in any::<u64>()) {
        let a = two_cycle();
        let c = sample_config();
        let s = Sampler::new(&a, &c);
        let mut rng = sample_rng(seed, 0);
        let x = s.complex(&mut rng);
        let y = s.complex(&mut rng);
        let f = s.chain_map(&mut rng, &x, &y);
        prop_assert!(f.cone().complex.validate().is_valid());
        prop_assert_eq!(x.shift(1).shift(-1), x.clone());

        let sum = x.direct_sum(&y).unwrap().to_ground().homology_dims();
        let (hx, hy) = (x.to_ground().homology_dims(), y.to_ground().homology_dims());
        for (n, h) in &sum {
            prop_assert_eq!(*h, hx.get(n).copied().unwrap_or(0) + hy.get(n).copied().unwrap_or(0));
        }
    }

    #[test]
    fn base_change_commutes_with_constructions(seed in any::<u64>()) {
        let a = two_cycle();
        let c = sample_config();
        let s = Sampler::new(&a, &c);
        let mut rng = sample_rng(seed, 1);
        let x = s.complex(&mut rng);
        let y = s.complex(&mut rng);
        let f = s.chain_map(&mut rng, &x, &y);
        for phi in homs(&a) {
            let bc = |m: &MatrixOverA<Q>| m.base_change(&phi).unwrap();
            let cone = f.cone().complex.base_change(&phi).unwrap();
            for &n in cone.dims().keys() {
                let expected = Matrix::blocks(&[
                    vec![bc(&x.differential(n - 1)).scale(&q(-1)), Matrix::zeros(x.rank(n - 2) * phi.n(), y.rank(n) * phi.n())],
                    vec![bc(&f.component(n - 1)), bc(&y.differential(n))],
                ]).unwrap();
                prop_assert_eq!(cone.differential(n), expected);
            }
            let shifted = x.shift(1).base_change(&phi).unwrap();
            let bx = x.base_change(&phi).unwrap();
            for &n in bx.dims().keys() {
                prop_assert_eq!(shifted.differential(n + 1), bx.differential(n).scale(&q(-1)));
            }
            let sum = x.direct_sum(&y).unwrap().base_change(&phi).unwrap();
            let by = y.base_change(&phi).unwrap();
            for &n in sum.dims().keys() {
                prop_assert_eq!(sum.differential(n), Matrix::block_diag(&bx.differential(n), &by.differential(n)));
            }
        }
    }

    #[test]
    fn derived_ranks_are_bounded(seed in any::<u64>()) {
        let a = two_cycle();
        let c = sample_config();
        let s = Sampler::new(&a, &c);
        let mut rng = sample_rng(seed, 2);
        let x = s.complex(&mut rng);
        let y = s.complex(&mut rng);
        let f = s.chain_map(&mut rng, &x, &y);
        for phi in homs(&a) {
            let sigma = SylvesterRank::new(phi).unwrap();
            let rx = sigma.derived_object_rank(&x).unwrap();
            prop_assert!(rx.is_nonneg());
            let termwise = RankPoly::normalize(x.ranks().iter().map(|(&n, &r)| (n, q(r as i64))), Period::Infinite);
            prop_assert!(termwise.checked_sub(&rx).unwrap().is_nonneg());
            for d in [Period::Infinite, Period::Finite(1), Period::Finite(3)] {
                let rf = sigma.morphism_rank(&f, d).unwrap();
                prop_assert!(rf.is_nonneg());
                prop_assert!(rf.le(&sigma.object_rank(&x, d).unwrap()).unwrap());
                prop_assert!(rf.le(&sigma.object_rank(&y, d).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn graded_dimension_matches_the_identity_hom(dims in proptest::collection::vec(0usize..=3, 1..5), seed in any::<u64>()) {
        let k = Arc::new(FdAlgebra::<Q>::ground());
        let c = sample_config();
        let s = Sampler::new(&k, &c);
        let mut rng = sample_rng(seed, 3);
        // a complex of vector spaces: alternate zero and random differentials
        let ranks: Vec<(i64, usize)> = dims.iter().enumerate().map(|(i, &r)| (i as i64, r)).collect();
        let diffs: Vec<(i64, MatrixOverA<Q>)> = (1..dims.len())
            .filter(|i| i % 2 == 1)
            .map(|i| (i as i64, s.matrix(&mut rng, dims[i - 1], dims[i])))
            .collect();
        let x = FreeComplex::new(k.clone(), ranks, diffs).unwrap();
        let ground: FieldComplex<Q> = x.to_ground();
        let sigma = SylvesterRank::new(MatAlgebraHom::identity_on_ground()).unwrap();
        prop_assert_eq!(graded_dimension_rank(&ground), sigma.derived_object_rank(&x).unwrap());
    }

    #[test]
    fn local_rank_is_invariant_under_invertible_matrices(seed in any::<u64>()) {
        let a = truncated_poly();
        let c = sample_config();
        let s = Sampler::new(&a, &c);
        let mut rng = sample_rng(seed, 4);
        let (r, k) = (s.positive_size(&mut rng) + 1, s.positive_size(&mut rng) + 1);
        let m = s.matrix(&mut rng, r, k);
        let (p, _) = s.invertible(&mut rng, r);
        let (qm, _) = s.invertible(&mut rng, k);
        let base = local_matrix_rank_of(&a, &m).unwrap();
        prop_assert_eq!(local_matrix_rank_of(&a, &p.mul(&m).unwrap()).unwrap(), base.clone());
        prop_assert_eq!(local_matrix_rank_of(&a, &m.mul(&qm).unwrap()).unwrap(), base);
    }

    #[test]
    fn tor_degree_zero_is_the_tensor_product(seed in any::<u64>()) {
        let a = two_cycle();
        let mut rng = sample_rng(seed, 5);
        let pick = |rng: &mut rand_chacha::ChaCha8Rng, side: Side| {
            use rand::Rng;
            let simple = |i: usize| {
                let act = (0..4).map(|j| Matrix::from_rows(vec![vec![q(i64::from(j == i))]]).unwrap()).collect();
                FdModule::new(a.clone(), side, 1, act).unwrap()
            };
            match rng.gen_range(0..3) {
                0 => simple(0),
                1 => simple(1),
                _ => FdModule::regular(a.clone(), side),
            }
        };
        let m = pick(&mut rng, Side::Right);
        let n = pick(&mut rng, Side::Left);
        let dims = tor_dims(&m, &n, 3).unwrap();
        prop_assert_eq!(dims[0], tensor_dim(&m, &n).unwrap());
        let free = tor_dims(&FdModule::regular(a.clone(), Side::Right), &n, 3).unwrap();
        prop_assert!(free[1..].iter().all(|&t| t == 0));
    }
}

#[test]
fn radical_is_a_nilpotent_ideal() {
    for a in [two_cycle(), truncated_poly()] {
        let rad = radical_and_residue(&a).unwrap();
        let in_radical = |v: &Vec<Q>| {
            let mut cols = rad.basis.clone();
            let before = Matrix::from_columns(a.dim(), &cols).rank();
            cols.push(v.clone());
            Matrix::from_columns(a.dim(), &cols).rank() == before
        };
        let mut power = rad.basis.clone();
        for x in &rad.basis {
            for y in &rad.basis {
                assert!(in_radical(&a.mul(x, y)));
            }
        }
        for _ in 0..a.dim() {
            power = power
                .iter()
                .flat_map(|p| rad.basis.iter().map(move |r| (p, r)))
                .map(|(p, r)| a.mul(p, r))
                .collect();
        }
        assert!(power.iter().all(|p| a.is_zero(p)));
    }
}
