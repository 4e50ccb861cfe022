//! Path algebras of quivers modulo admissible relations.
//!
//! A path is written in multiplication order: `[a, b]` is the product `a b`,
//! which is nonzero only when `src(a) = dst(b)` (functional composition, `b`
//! first). So `e_v p = p` iff `p` ends at `v`, and `p e_v = p` iff it starts
//! at `v`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::FdAlgebra;
use crate::error::{Error, Result};
use crate::linal::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub src: String,
    pub dst: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

/// One term `c * a_1 a_2 ... a_k` of a relation.
#[derive(Clone, Debug, PartialEq)]
pub struct PathTerm<F> {
    pub coeff: F,
    pub arrows: Vec<String>,
}

pub type Relation<F> = Vec<PathTerm<F>>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Path {
    Trivial(usize),
    // arrow indices in multiplication order
    Arrows(Vec<usize>),
}

impl Quiver {
    fn vertex(&self, name: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::Quiver(format!("unknown vertex {name:?}")))
    }

    fn arrow(&self, name: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| Error::Quiver(format!("unknown arrow {name:?}")))
    }

    fn ends(&self, src_dst: &[(usize, usize)], p: &Path) -> (usize, usize) {
        match p {
            Path::Trivial(v) => (*v, *v),
            Path::Arrows(a) => (src_dst[*a.last().unwrap()].0, src_dst[a[0]].1),
        }
    }

    /// The path algebra modulo the two-sided ideal generated by `relations`.
    ///
    /// Every relation must lie in the square of the arrow ideal. The result is
    /// computed in the truncation by paths of length `path_cap + 1`; if some
    /// path of that length is not killed by the relations the algebra is
    /// rejected as not finite-dimensional under the cap.
    pub fn path_algebra<F: Scalar>(
        &self,
        relations: &[Relation<F>],
        path_cap: usize,
    ) -> Result<FdAlgebra<F>> {
        let nv = self.vertices.len();
        if nv == 0 {
            return Err(Error::Quiver("quiver has no vertices".into()));
        }
        let mut src_dst = Vec::with_capacity(self.arrows.len());
        for a in &self.arrows {
            src_dst.push((self.vertex(&a.src)?, self.vertex(&a.dst)?));
        }
        let limit = path_cap + 1;

        // Enumerate all paths of length <= limit, grouped by length.
        let mut paths: Vec<Path> = (0..nv).map(Path::Trivial).collect();
        let mut frontier: Vec<Vec<usize>> = (0..self.arrows.len()).map(|a| vec![a]).collect();
        for len in 1..=limit {
            let mut next = Vec::new();
            for p in &frontier {
                paths.push(Path::Arrows(p.clone()));
                if len < limit {
                    // extend on the left: b p, needs src(b) = dst(p)
                    let dst = src_dst[p[0]].1;
                    for (b, &(s, _)) in src_dst.iter().enumerate() {
                        if s == dst {
                            let mut q = vec![b];
                            q.extend_from_slice(p);
                            next.push(q);
                        }
                    }
                }
            }
            frontier = next;
        }
        let index: HashMap<Path, usize> = paths
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let np = paths.len();
        let length = |p: &Path| match p {
            Path::Trivial(_) => 0,
            Path::Arrows(a) => a.len(),
        };

        let concat = |p: &Path, q: &Path| -> Option<Path> {
            let (ps, _) = self.ends(&src_dst, p);
            let (_, qd) = self.ends(&src_dst, q);
            if ps != qd {
                return None;
            }
            match (p, q) {
                (Path::Trivial(_), _) => Some(q.clone()),
                (_, Path::Trivial(_)) => Some(p.clone()),
                (Path::Arrows(a), Path::Arrows(b)) => {
                    let mut c = a.clone();
                    c.extend_from_slice(b);
                    Some(Path::Arrows(c))
                }
            }
        };

        // Relations as vectors in the truncated path space.
        let mut rel_vecs: Vec<Vec<F>> = Vec::new();
        for (ri, rel) in relations.iter().enumerate() {
            let mut v = vec![F::zero(); np];
            for term in rel {
                if term.arrows.len() < 2 {
                    return Err(Error::Quiver(format!(
                        "relation {ri} has a term of length {} (relations must lie in paths of length >= 2)",
                        term.arrows.len()
                    )));
                }
                let ids = term
                    .arrows
                    .iter()
                    .map(|n| self.arrow(n))
                    .collect::<Result<Vec<_>>>()?;
                for w in ids.windows(2) {
                    if src_dst[w[0]].0 != src_dst[w[1]].1 {
                        return Err(Error::Quiver(format!(
                            "relation {ri} contains a non-composable path"
                        )));
                    }
                }
                if ids.len() > limit {
                    continue;
                }
                let i = index[&Path::Arrows(ids)];
                v[i] = v[i].clone() + term.coeff.clone();
            }
            rel_vecs.push(v);
        }

        // Two-sided ideal: span of u r w over paths u, w.
        let mut gens: Vec<Vec<F>> = Vec::new();
        for r in &rel_vecs {
            for u in &paths {
                for w in &paths {
                    let mut out = vec![F::zero(); np];
                    let mut any = false;
                    for (i, c) in r.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let Some(ur) = concat(u, &paths[i]) else {
                            continue;
                        };
                        let Some(urw) = concat(&ur, w) else { continue };
                        if length(&urw) > limit {
                            continue;
                        }
                        let k = index[&urw];
                        out[k] = out[k].clone() + c.clone();
                        any = true;
                    }
                    if any && out.iter().any(|x| !x.is_zero()) {
                        gens.push(out);
                    }
                }
            }
        }

        // Order columns longest-first so that long paths become pivots and the
        // surviving basis consists of short paths.
        let mut order: Vec<usize> = (0..np).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(length(&paths[i])), i));
        let reduced: Vec<Vec<F>> = if gens.is_empty() {
            Vec::new()
        } else {
            let m = Matrix::from_fn(gens.len(), np, |r, c| gens[r][order[c]].clone());
            let (rref, pivots) = m.rref();
            (0..pivots.len())
                .map(|r| {
                    let mut v = vec![F::zero(); np];
                    for c in 0..np {
                        v[order[c]] = rref[(r, c)].clone();
                    }
                    v
                })
                .collect()
        };
        let pivot_of: Vec<usize> = reduced
            .iter()
            .map(|row| {
                order
                    .iter()
                    .copied()
                    .find(|&c| !row[c].is_zero())
                    .expect("nonzero rref row")
            })
            .collect();
        let normal_form = |mut v: Vec<F>| -> Vec<F> {
            for (row, &p) in reduced.iter().zip(&pivot_of) {
                if v[p].is_zero() {
                    continue;
                }
                let c = v[p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x = x.clone() - c.clone() * y.clone();
                    }
                }
            }
            v
        };

        for (i, p) in paths.iter().enumerate() {
            if length(p) == limit {
                let mut v = vec![F::zero(); np];
                v[i] = F::one();
                if normal_form(v).iter().any(|x| !x.is_zero()) {
                    return Err(Error::Quiver(format!(
                        "a path of length {limit} survives the relations; not finite-dimensional under path_cap {path_cap}"
                    )));
                }
            }
        }

        let is_pivot: Vec<bool> = (0..np).map(|i| pivot_of.contains(&i)).collect();
        let basis: Vec<usize> = (0..np)
            .filter(|&i| !is_pivot[i] && length(&paths[i]) <= path_cap)
            .collect();
        let pos: HashMap<usize, usize> = basis.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let to_basis = |v: &[F]| -> Vec<F> {
            let mut out = vec![F::zero(); basis.len()];
            for (i, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    out[pos[&i]] = c.clone();
                }
            }
            out
        };

        let labels = basis
            .iter()
            .map(|&i| match &paths[i] {
                Path::Trivial(v) => format!("e{}", self.vertices[*v]),
                Path::Arrows(a) => a
                    .iter()
                    .map(|&x| self.arrows[x].name.as_str())
                    .collect::<Vec<_>>()
                    .join("*"),
            })
            .collect::<Vec<_>>();

        let mut products = Vec::with_capacity(basis.len() * basis.len());
        for &i in &basis {
            for &j in &basis {
                let v = match concat(&paths[i], &paths[j]) {
                    Some(pq) if length(&pq) <= limit => {
                        let mut v = vec![F::zero(); np];
                        v[index[&pq]] = F::one();
                        normal_form(v)
                    }
                    _ => vec![F::zero(); np],
                };
                products.push(to_basis(&v));
            }
        }
        let mut unit = vec![F::zero(); np];
        for v in 0..nv {
            unit[index[&Path::Trivial(v)]] = F::one();
        }
        let unit = to_basis(&normal_form(unit));
        FdAlgebra::from_dense(labels, unit, products)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fdalg::tests::{q, two_cycle, Q};

    fn arrow(name: &str, src: &str, dst: &str) -> Arrow {
        Arrow {
            name: name.into(),
            src: src.into(),
            dst: dst.into(),
        }
    }

    fn mono(names: &[&str]) -> Relation<Q> {
        vec![PathTerm {
            coeff: q(1),
            arrows: names.iter().map(|s| s.to_string()).collect(),
        }]
    }

    #[test]
    fn two_cycle_from_quiver() {
        let quiver = Quiver {
            vertices: vec!["1".into(), "2".into()],
            arrows: vec![arrow("a1", "1", "2"), arrow("a2", "2", "1")],
        };
        let alg = quiver
            .path_algebra(&[mono(&["a1", "a2"]), mono(&["a2", "a1"])], 4)
            .unwrap();
        assert_eq!(alg.labels(), &["e1", "e2", "a1", "a2"]);
        assert_eq!(alg, two_cycle());
    }

    #[test]
    fn single_vertex_is_ground_field() {
        let quiver = Quiver {
            vertices: vec!["v".into()],
            arrows: vec![],
        };
        let alg = quiver.path_algebra::<Q>(&[], 3).unwrap();
        assert_eq!(alg.dim(), 1);
    }

    #[test]
    fn free_loop_exceeds_cap() {
        let quiver = Quiver {
            vertices: vec!["v".into()],
            arrows: vec![arrow("x", "v", "v")],
        };
        assert!(matches!(
            quiver.path_algebra::<Q>(&[], 10),
            Err(Error::Quiver(_))
        ));
    }

    #[test]
    fn loop_with_cube_relation() {
        let quiver = Quiver {
            vertices: vec!["v".into()],
            arrows: vec![arrow("x", "v", "v")],
        };
        let alg = quiver.path_algebra(&[mono(&["x", "x", "x"])], 5).unwrap();
        assert_eq!(alg.labels(), &["ev", "x", "x*x"]);
    }

    #[test]
    fn commutativity_relation() {
        // two loops with xy - yx and all length-2 paths x^2, y^2: k[x,y]/(x,y)^2 + ... dims 1 + 2 + 1
        let quiver = Quiver {
            vertices: vec!["v".into()],
            arrows: vec![arrow("x", "v", "v"), arrow("y", "v", "v")],
        };
        let comm = vec![
            PathTerm {
                coeff: q(1),
                arrows: vec!["x".into(), "y".into()],
            },
            PathTerm {
                coeff: q(-1),
                arrows: vec!["y".into(), "x".into()],
            },
        ];
        let alg = quiver
            .path_algebra(&[comm, mono(&["x", "x"]), mono(&["y", "y"])], 4)
            .unwrap();
        assert_eq!(alg.dim(), 4);
        assert!(alg.is_commutative());
    }

    #[test]
    fn short_relation_is_rejected() {
        let quiver = Quiver {
            vertices: vec!["v".into()],
            arrows: vec![arrow("x", "v", "v")],
        };
        assert!(quiver.path_algebra(&[mono(&["x"])], 3).is_err());
    }
}
