//! JSON wire formats and their conversion to and from the in-memory types.
//!
//! Scalars travel as strings (`"num/den"` or an integer), so nothing is ever
//! rounded. Algebra elements are coordinate vectors over the algebra basis; on
//! input a string expression such as `"e1 - 1/2*a2"` is accepted as well.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coeff::Period;
use crate::error::{Error, Result};
use crate::fdalg::{Arrow, FdAlgebra, MatAlgebraHom, MatrixOverA, PathTerm, Quiver};
use crate::homalg::{FdModule, Side};
use crate::linal::Matrix;
use crate::perf::{ChainMap, FreeComplex};
use crate::scalar::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementJson {
    Coords(Vec<String>),
    Expr(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixOverAJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<ElementJson>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathTermJson {
    pub coeff: String,
    pub arrows: Vec<String>,
}

/// Either explicit structure constants (`basis`, `unit`, `products`) or a
/// bound quiver (`vertices`, `arrows`, `relations`, `path_cap`).
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub products: Option<Vec<(usize, usize, usize, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arrows: Option<Vec<Arrow>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<Vec<Vec<PathTermJson>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path_cap: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomJson {
    pub algebra: String,
    pub n: usize,
    pub images: BTreeMap<String, MatrixJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleJson {
    pub algebra: String,
    pub dim: usize,
    pub side: Side,
    pub action: BTreeMap<String, MatrixJson>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeJson {
    pub n: i64,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub algebra: String,
    pub degrees: Vec<DegreeJson>,
    #[serde(default)]
    pub differentials: BTreeMap<String, MatrixOverAJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainMapJson {
    pub source: String,
    pub target: String,
    #[serde(default)]
    pub components: BTreeMap<String, MatrixOverAJson>,
}

/// A workspace file. Every section is optional.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceJson {
    #[serde(default = "default_field")]
    pub field: FieldSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub default_period: Option<Period>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub default_depth: Option<usize>,
    #[serde(default)]
    pub algebras: BTreeMap<String, AlgebraJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub homs: BTreeMap<String, HomJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub modules: BTreeMap<String, ModuleJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub complexes: BTreeMap<String, ComplexJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub chain_maps: BTreeMap<String, ChainMapJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub idempotents: BTreeMap<String, IdempotentJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub matrices: BTreeMap<String, NamedMatrixJson>,
}

/// A summand `(X, e)`: a complex and the components of an idempotent
/// endomorphism of it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdempotentJson {
    pub complex: String,
    #[serde(default)]
    pub components: BTreeMap<String, MatrixOverAJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NamedMatrixJson {
    pub algebra: String,
    #[serde(flatten)]
    pub matrix: MatrixOverAJson,
}

fn default_field() -> FieldSpec {
    FieldSpec::Rationals
}

fn check_field<F: Scalar>(field: Option<FieldSpec>) -> Result<()> {
    match field {
        Some(f) if f != F::field() => Err(Error::FieldMismatch(format!(
            "expected {}, got {f}",
            F::field()
        ))),
        _ => Ok(()),
    }
}

fn scalar_strings<F: Scalar>(v: &[F]) -> Vec<String> {
    v.iter().map(|c| c.to_string()).collect()
}

pub fn matrix_to_json<F: Scalar>(m: &Matrix<F>) -> MatrixJson {
    MatrixJson {
        field: Some(F::field()),
        rows: m.rows(),
        cols: m.cols(),
        entries: (0..m.rows()).map(|i| scalar_strings(m.row(i))).collect(),
    }
}

pub fn matrix_from_json<F: Scalar>(j: &MatrixJson) -> Result<Matrix<F>> {
    check_field::<F>(j.field)?;
    if j.entries.len() != j.rows || j.entries.iter().any(|r| r.len() != j.cols) {
        return Err(Error::Shape(format!(
            "matrix entries do not form a {}x{} array",
            j.rows, j.cols
        )));
    }
    let data = j
        .entries
        .iter()
        .flatten()
        .map(|s| F::parse(s))
        .collect::<Result<Vec<_>>>()?;
    Matrix::new(j.rows, j.cols, data)
}

/// Parses `"c1*l1 + c2*l2 - l3 + c"`; a bare scalar means a multiple of the unit.
pub fn parse_element<F: Scalar>(a: &FdAlgebra<F>, s: &str) -> Result<Vec<F>> {
    let mut out = a.zero();
    for raw in s.replace('-', "+-").split('+') {
        let t = raw.trim();
        if t.is_empty() {
            continue;
        }
        let (neg, t) = match t.strip_prefix('-') {
            Some(rest) => (true, rest.trim()),
            None => (false, t),
        };
        let term = if let Some(i) = a.label_index(t) {
            a.basis(i)
        } else if let Some((c, label)) = t
            .split_once('*')
            .filter(|(_, l)| a.label_index(l.trim()).is_some())
        {
            a.scale(
                &a.basis(a.label_index(label.trim()).expect("checked")),
                &F::parse(c)?,
            )
        } else {
            a.scalar(F::parse(t).map_err(|_| Error::Parse(format!("unknown term {t:?} in {s:?}")))?)
        };
        out = if neg {
            a.sub(&out, &term)
        } else {
            a.add(&out, &term)
        };
    }
    Ok(out)
}

pub fn element_from_json<F: Scalar>(a: &FdAlgebra<F>, e: &ElementJson) -> Result<Vec<F>> {
    match e {
        ElementJson::Coords(c) => {
            if c.len() != a.dim() {
                return Err(Error::Shape(format!(
                    "element has {} coordinates, algebra has dimension {}",
                    c.len(),
                    a.dim()
                )));
            }
            c.iter().map(|s| F::parse(s)).collect()
        }
        ElementJson::Expr(s) => parse_element(a, s),
    }
}

pub fn matrix_over_a_to_json<F: Scalar>(m: &MatrixOverA<F>) -> MatrixOverAJson {
    MatrixOverAJson {
        rows: m.rows(),
        cols: m.cols(),
        entries: (0..m.rows())
            .map(|i| {
                (0..m.cols())
                    .map(|j| ElementJson::Coords(scalar_strings(m.get(i, j))))
                    .collect()
            })
            .collect(),
    }
}

pub fn matrix_over_a_from_json<F: Scalar>(
    a: &Arc<FdAlgebra<F>>,
    j: &MatrixOverAJson,
) -> Result<MatrixOverA<F>> {
    if j.entries.len() != j.rows || j.entries.iter().any(|r| r.len() != j.cols) {
        return Err(Error::Shape(format!(
            "matrix entries do not form a {}x{} array",
            j.rows, j.cols
        )));
    }
    let entries = j
        .entries
        .iter()
        .flatten()
        .map(|e| element_from_json(a, e))
        .collect::<Result<Vec<_>>>()?;
    MatrixOverA::from_entries(a.clone(), j.rows, j.cols, entries)
}

pub fn algebra_to_json<F: Scalar>(a: &FdAlgebra<F>) -> AlgebraJson {
    AlgebraJson {
        field: Some(F::field()),
        basis: Some(a.labels().to_vec()),
        unit: Some(scalar_strings(a.unit())),
        products: Some(
            a.structure_constants()
                .into_iter()
                .map(|(i, j, k, c)| (i, j, k, c.to_string()))
                .collect(),
        ),
        ..AlgebraJson::default()
    }
}

pub fn algebra_from_json<F: Scalar>(j: &AlgebraJson) -> Result<FdAlgebra<F>> {
    check_field::<F>(j.field)?;
    match (&j.basis, &j.vertices) {
        (Some(basis), None) => {
            let unit = j
                .unit
                .as_ref()
                .ok_or_else(|| Error::Parse("algebra needs a unit".into()))?;
            let unit = unit
                .iter()
                .map(|s| F::parse(s))
                .collect::<Result<Vec<_>>>()?;
            let triples = j
                .products
                .iter()
                .flatten()
                .map(|(a, b, c, s)| Ok((*a, *b, *c, F::parse(s)?)))
                .collect::<Result<Vec<_>>>()?;
            FdAlgebra::from_structure_constants(basis.clone(), unit, triples)
        }
        (None, Some(vertices)) => {
            let quiver = Quiver {
                vertices: vertices.clone(),
                arrows: j.arrows.clone().unwrap_or_default(),
            };
            let relations = j
                .relations
                .iter()
                .flatten()
                .map(|rel| {
                    rel.iter()
                        .map(|t| {
                            Ok(PathTerm {
                                coeff: F::parse(&t.coeff)?,
                                arrows: t.arrows.clone(),
                            })
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let cap = j
                .path_cap
                .ok_or_else(|| Error::Parse("quiver algebra needs path_cap".into()))?;
            quiver.path_algebra(&relations, cap)
        }
        _ => Err(Error::Parse(
            "algebra needs either basis/unit/products or vertices/arrows/relations/path_cap".into(),
        )),
    }
}

fn by_label<F: Scalar>(
    a: &FdAlgebra<F>,
    images: &BTreeMap<String, MatrixJson>,
    what: &str,
) -> Result<Vec<Matrix<F>>> {
    if let Some(extra) = images.keys().find(|l| a.label_index(l).is_none()) {
        return Err(Error::Parse(format!(
            "{what} names unknown basis element {extra:?}"
        )));
    }
    a.labels()
        .iter()
        .map(|l| {
            let m = images
                .get(l)
                .ok_or_else(|| Error::Parse(format!("{what} has no image for {l:?}")))?;
            matrix_from_json(m)
        })
        .collect()
}

fn labelled<F: Scalar>(a: &FdAlgebra<F>, ms: &[Matrix<F>]) -> BTreeMap<String, MatrixJson> {
    a.labels()
        .iter()
        .cloned()
        .zip(ms.iter().map(matrix_to_json))
        .collect()
}

pub fn hom_to_json<F: Scalar>(phi: &MatAlgebraHom<F>, algebra: &str) -> HomJson {
    HomJson {
        algebra: algebra.into(),
        n: phi.n(),
        images: labelled(phi.source(), phi.images()),
    }
}

/// Builds the homomorphism without validating it.
pub fn hom_from_json<F: Scalar>(a: &Arc<FdAlgebra<F>>, j: &HomJson) -> Result<MatAlgebraHom<F>> {
    let images = by_label(a, &j.images, "homomorphism")?;
    if let Some(m) = images.iter().find(|m| m.rows() != j.n || m.cols() != j.n) {
        return Err(Error::Shape(format!(
            "image is {}x{}, expected {}x{}",
            m.rows(),
            m.cols(),
            j.n,
            j.n
        )));
    }
    Ok(MatAlgebraHom::new_unchecked(a.clone(), j.n, images))
}

pub fn module_to_json<F: Scalar>(m: &FdModule<F>, algebra: &str) -> ModuleJson {
    ModuleJson {
        algebra: algebra.into(),
        dim: m.dim(),
        side: m.side(),
        action: labelled(m.algebra(), m.action()),
    }
}

pub fn module_from_json<F: Scalar>(a: &Arc<FdAlgebra<F>>, j: &ModuleJson) -> Result<FdModule<F>> {
    let action = by_label(a, &j.action, "module")?;
    FdModule::new(a.clone(), j.side, j.dim, action)
}

fn degree_key(n: i64) -> String {
    n.to_string()
}

fn parse_degree(s: &str) -> Result<i64> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad degree {s:?}")))
}

pub fn complex_to_json<F: Scalar>(x: &FreeComplex<F>, algebra: &str) -> ComplexJson {
    ComplexJson {
        algebra: algebra.into(),
        degrees: x
            .ranks()
            .iter()
            .map(|(&n, &rank)| DegreeJson { n, rank })
            .collect(),
        differentials: x
            .differentials()
            .iter()
            .map(|(&n, d)| (degree_key(n), matrix_over_a_to_json(d)))
            .collect(),
    }
}

pub fn complex_from_json<F: Scalar>(
    a: &Arc<FdAlgebra<F>>,
    j: &ComplexJson,
) -> Result<FreeComplex<F>> {
    let ranks = j.degrees.iter().map(|d| (d.n, d.rank));
    let diffs = j
        .differentials
        .iter()
        .map(|(n, m)| Ok((parse_degree(n)?, matrix_over_a_from_json(a, m)?)))
        .collect::<Result<Vec<_>>>()?;
    FreeComplex::new(a.clone(), ranks, diffs)
}

pub fn chain_map_to_json<F: Scalar>(f: &ChainMap<F>, source: &str, target: &str) -> ChainMapJson {
    ChainMapJson {
        source: source.into(),
        target: target.into(),
        components: f
            .components()
            .iter()
            .map(|(&n, m)| (degree_key(n), matrix_over_a_to_json(m)))
            .collect(),
    }
}

pub fn chain_map_from_json<F: Scalar>(
    source: &FreeComplex<F>,
    target: &FreeComplex<F>,
    j: &ChainMapJson,
) -> Result<ChainMap<F>> {
    components_from_json(source, target, &j.components)
}

pub fn components_from_json<F: Scalar>(
    source: &FreeComplex<F>,
    target: &FreeComplex<F>,
    components: &BTreeMap<String, MatrixOverAJson>,
) -> Result<ChainMap<F>> {
    let comps = components
        .iter()
        .map(|(n, m)| {
            Ok((
                parse_degree(n)?,
                matrix_over_a_from_json(source.algebra(), m)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    ChainMap::new(source.clone(), target.clone(), comps)
}
