use std::sync::Arc;

use super::{check_pair, FdModule, Side};
use crate::error::{Error, Result};
use crate::fdalg::{radical_and_residue, FdAlgebra, MatrixOverA, Radical};
use crate::linal::{coordinates, independent_subset, Matrix};
use crate::scalar::Scalar;

/// A surjection `A^g -> M` sending the `j`-th free generator to `generators[j]`.
#[derive(Clone, Debug)]
pub struct FreeHull<F> {
    pub generators: Vec<Vec<F>>,
    /// `k`-basis of the kernel, in coordinates of `A^g` (block `j` holds the
    /// coordinates of the `j`-th component).
    pub kernel: Vec<Vec<F>>,
}

impl<F> FreeHull<F> {
    pub fn count(&self) -> usize {
        self.generators.len()
    }
}

/// `A^{g_N} -> ... -> A^{g_1} -> A^{g_0} -> M -> 0`.
#[derive(Clone, Debug)]
pub struct Resolution<F> {
    /// `maps[i]` is `f_{i+1} : A^{g_{i+1}} -> A^{g_i}`, a `g_i x g_{i+1}` matrix.
    pub maps: Vec<MatrixOverA<F>>,
    /// `g_0, ..., g_N`.
    pub ranks: Vec<usize>,
    /// Syzygy modules `Omega^1 M, ..., Omega^N M`.
    pub syzygies: Vec<FdModule<F>>,
}

/// `A^p -f-> A^g -> M -> 0`.
#[derive(Clone, Debug)]
pub struct Presentation<F> {
    pub matrix: MatrixOverA<F>,
    pub generators: usize,
}

fn require_right<F: Scalar>(m: &FdModule<F>, op: &'static str) -> Result<()> {
    if m.side() != Side::Right {
        return Err(Error::Precondition {
            op,
            msg: "expected a right module".into(),
        });
    }
    Ok(())
}

fn radical_if_available<F: Scalar>(a: &FdAlgebra<F>) -> Option<Radical<F>> {
    radical_and_residue(a).ok()
}

/// `g . b_t` for every basis element `b_t` of `A`.
fn orbit<F: Scalar>(m: &FdModule<F>, g: &[F]) -> Vec<Vec<F>> {
    m.action()
        .iter()
        .map(|r| r.transpose().mul_vec(g))
        .collect()
}

fn span_rank<F: Scalar>(dim: usize, fixed: &[Vec<F>], gens: &[Vec<F>], m: &FdModule<F>) -> usize {
    let mut vectors = fixed.to_vec();
    for g in gens {
        vectors.extend(orbit(m, g));
    }
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_columns(dim, &vectors).rank()
}

/// Generators lifted from a basis of `M / M rad A`. Top elements are merged
/// into one generator whenever that loses nothing, so `A` itself needs a
/// single generator. Without a radical every basis vector is a generator.
fn choose_generators<F: Scalar>(m: &FdModule<F>, rad: Option<&Radical<F>>) -> Vec<Vec<F>> {
    let v = m.dim();
    let Some(rad) = rad else {
        return (0..v).map(|i| unit_vector(v, i)).collect();
    };
    let mut m_rad = Vec::new();
    for r in &rad.basis {
        let act = m.act(r);
        for i in 0..v {
            let row = act.row(i).to_vec();
            if row.iter().any(|x| !x.is_zero()) {
                m_rad.push(row);
            }
        }
    }
    let keep = independent_subset(v, &m_rad);
    let m_rad: Vec<Vec<F>> = keep.into_iter().map(|i| m_rad[i].clone()).collect();
    let r = m_rad.len();
    let mut candidates = m_rad.clone();
    candidates.extend((0..v).map(|i| unit_vector(v, i)));
    let top: Vec<usize> = independent_subset(v, &candidates)
        .into_iter()
        .filter(|&i| i >= r)
        .map(|i| i - r)
        .collect();

    let mut gens: Vec<Vec<F>> = Vec::new();
    for t in top {
        let t = unit_vector(v, t);
        let mut with_t = gens.clone();
        with_t.push(t.clone());
        let separate = span_rank(v, &m_rad, &with_t, m);
        let merged = (0..gens.len()).find(|&j| {
            let mut trial = gens.clone();
            trial[j] = trial[j]
                .iter()
                .zip(&t)
                .map(|(x, y)| x.clone() + y.clone())
                .collect();
            span_rank(v, &m_rad, &trial, m) == separate
        });
        match merged {
            Some(j) => {
                gens[j] = gens[j]
                    .iter()
                    .zip(&t)
                    .map(|(x, y)| x.clone() + y.clone())
                    .collect()
            }
            None => gens.push(t),
        }
    }
    gens
}

fn unit_vector<F: Scalar>(n: usize, i: usize) -> Vec<F> {
    let mut e = vec![F::zero(); n];
    e[i] = F::one();
    e
}

fn hull_with<F: Scalar>(m: &FdModule<F>, rad: Option<&Radical<F>>) -> Result<FreeHull<F>> {
    let gens = choose_generators(m, rad);
    // columns: images of gen_j . b_t
    let columns: Vec<Vec<F>> = gens.iter().flat_map(|g| orbit(m, g)).collect();
    let map = Matrix::from_columns(m.dim(), &columns);
    if map.rank() != m.dim() {
        return Err(Error::Precondition {
            op: "free_hull",
            msg: "chosen generators do not span the module".into(),
        });
    }
    Ok(FreeHull {
        generators: gens,
        kernel: map.kernel_basis(),
    })
}

/// Free cover of a right module by radical-minimal generators when the
/// radical is computable, otherwise by the whole basis.
pub fn free_hull<F: Scalar>(m: &FdModule<F>) -> Result<FreeHull<F>> {
    require_right(m, "free_hull")?;
    hull_with(m, radical_if_available(m.algebra()).as_ref())
}

/// The kernel of a free hull as a right module on the given basis.
fn kernel_module<F: Scalar>(a: &Arc<FdAlgebra<F>>, g: usize, kernel: &[Vec<F>]) -> FdModule<F> {
    let m = a.dim();
    let basis = Matrix::from_columns(g * m, kernel);
    let action = (0..m)
        .map(|b| {
            let r = a.right_basis_mul(b);
            let mut out = Matrix::zeros(kernel.len(), kernel.len());
            for (p, kappa) in kernel.iter().enumerate() {
                let mut moved = Vec::with_capacity(g * m);
                for j in 0..g {
                    moved.extend(r.mul_vec(&kappa[j * m..(j + 1) * m]));
                }
                let c = coordinates(&basis, &moved).expect("kernel is a right submodule");
                for (q, x) in c.into_iter().enumerate() {
                    out[(p, q)] = x;
                }
            }
            out
        })
        .collect();
    FdModule::from_parts_unchecked(a.clone(), Side::Right, kernel.len(), action)
}

/// Free resolution of a right module to `depth` maps, with exactness checked
/// over the ground field at every stage.
pub fn resolution<F: Scalar>(m: &FdModule<F>, depth: usize) -> Result<Resolution<F>> {
    require_right(m, "resolution")?;
    if depth == 0 {
        return Err(Error::Precondition {
            op: "resolution",
            msg: "depth must be at least 1".into(),
        });
    }
    let a = m.algebra().clone();
    let dim_a = a.dim();
    let rad = radical_if_available(&a);

    let hull = hull_with(m, rad.as_ref())?;
    let mut ranks = vec![hull.count()];
    let mut maps = Vec::with_capacity(depth);
    let mut syzygies = Vec::with_capacity(depth);
    let mut embedding = hull.kernel;
    let mut module = kernel_module(&a, ranks[0], &embedding);
    let mut prev_ground_rank = m.dim();

    for _ in 0..depth {
        let g_prev = *ranks.last().expect("nonempty");
        let h = hull_with(&module, rad.as_ref())?;
        // column l of f is the l-th generator written in A^{g_prev}
        let gens: Vec<Vec<F>> = h
            .generators
            .iter()
            .map(|c| {
                let mut v = vec![F::zero(); g_prev * dim_a];
                for (coef, kappa) in c.iter().zip(&embedding) {
                    if !coef.is_zero() {
                        for (x, y) in v.iter_mut().zip(kappa) {
                            *x = x.clone() + coef.clone() * y.clone();
                        }
                    }
                }
                v
            })
            .collect();
        let f = MatrixOverA::from_fn(a.clone(), g_prev, gens.len(), |i, l| {
            gens[l][i * dim_a..(i + 1) * dim_a].to_vec()
        });
        let image_rank = f.to_ground().rank();
        // exactness at A^{g_prev}: image of f equals the kernel of the previous map
        if image_rank != g_prev * dim_a - prev_ground_rank || image_rank != module.dim() {
            return Err(Error::Precondition {
                op: "resolution",
                msg: "computed stage is not exact".into(),
            });
        }
        prev_ground_rank = image_rank;
        ranks.push(gens.len());
        maps.push(f);
        syzygies.push(module.clone());

        // the next syzygy, in coordinates of A^{g_new}
        embedding = h.kernel;
        module = kernel_module(&a, gens.len(), &embedding);
    }
    Ok(Resolution {
        maps,
        ranks,
        syzygies,
    })
}

/// `A^{g_1} -> A^{g_0} -> M -> 0` with the cokernel dimension audited.
pub fn presentation<F: Scalar>(m: &FdModule<F>) -> Result<Presentation<F>> {
    let r = resolution(m, 1)?;
    let f = r.maps.into_iter().next().expect("depth 1");
    let coker = r.ranks[0] * m.algebra().dim() - f.to_ground().rank();
    if coker != m.dim() {
        return Err(Error::Precondition {
            op: "presentation",
            msg: "cokernel dimension does not match".into(),
        });
    }
    Ok(Presentation {
        matrix: f,
        generators: r.ranks[0],
    })
}

/// `[dim Tor_0(M, N), ..., dim Tor_depth(M, N)]` from a free resolution of `M`.
pub fn tor_dims<F: Scalar>(m: &FdModule<F>, n: &FdModule<F>, depth: usize) -> Result<Vec<usize>> {
    check_pair(m, n)?;
    let res = resolution(m, depth + 1)?;
    let w = n.dim();
    // F (x)_A N on N^g: block (i, j) is the action of F_ij on N
    let ground: Vec<Matrix<F>> = res
        .maps
        .iter()
        .map(|f| {
            let mut out = Matrix::zeros(f.rows() * w, f.cols() * w);
            for i in 0..f.rows() {
                for j in 0..f.cols() {
                    let l = n.act(f.get(i, j));
                    for r in 0..w {
                        for c in 0..w {
                            out[(i * w + r, j * w + c)] = l[(r, c)].clone();
                        }
                    }
                }
            }
            out
        })
        .collect();
    let ranks: Vec<usize> = ground.iter().map(|d| d.rank()).collect();
    Ok((0..=depth)
        .map(|i| {
            let incoming = ranks[i];
            let outgoing = if i == 0 { 0 } else { ranks[i - 1] };
            res.ranks[i] * w - incoming - outgoing
        })
        .collect())
}
