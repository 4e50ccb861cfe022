//! Loading and validating workspace files.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use perfrank::fdalg::{MatAlgebraHom, MatrixOverA};
use perfrank::homalg::FdModule;
use perfrank::json::{self, WorkspaceJson};
use perfrank::perf::{ChainMap, FreeComplex, IdempotentObject};
use perfrank::{Period, Scalar};

pub const SMALLEXAMPLE: &str = include_str!("../fixtures/smallexample.json");
pub const FIEDOROWICZ: &str = include_str!("../fixtures/fiedorowicz.json");
pub const DUALNUMBERS: &str = include_str!("../fixtures/dualnumbers.json");

/// Every problem found while loading, one line each.
#[derive(Debug)]
pub struct LoadError {
    pub errors: Vec<String>,
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "invalid workspace ({} error(s)):", self.errors.len())?;
        for e in &self.errors {
            writeln!(f, "  {e}")?;
        }
        Ok(())
    }
}

impl std::error::Error for LoadError {}

pub fn parse(text: &str) -> Result<WorkspaceJson, LoadError> {
    serde_json::from_str(text).map_err(|e| LoadError {
        errors: vec![format!("schema: {e}")],
    })
}

pub struct Workspace<F> {
    pub default_period: Period,
    pub default_depth: Option<usize>,
    pub homs: BTreeMap<String, MatAlgebraHom<F>>,
    pub modules: BTreeMap<String, FdModule<F>>,
    pub complexes: BTreeMap<String, FreeComplex<F>>,
    pub chain_maps: BTreeMap<String, ChainMap<F>>,
    pub idempotents: BTreeMap<String, IdempotentObject<F>>,
    pub matrices: BTreeMap<String, MatrixOverA<F>>,
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, kind: &str, name: &str) -> Result<&'a T, String> {
    map.get(name)
        .ok_or_else(|| format!("unresolved reference to {kind} {name:?}"))
}

impl<F: Scalar> Workspace<F> {
    /// Builds every entry, collecting all failures. Entries that depend on a
    /// failed entry report the unresolved reference.
    pub fn build(j: &WorkspaceJson) -> Result<Self, LoadError> {
        let mut errors = Vec::new();
        let mut note = |section: &str, name: &str, msg: String| {
            errors.push(format!("{section}.{name}: {msg}"))
        };

        let mut algebras = BTreeMap::new();
        for (name, aj) in &j.algebras {
            match json::algebra_from_json::<F>(aj) {
                Ok(a) => {
                    algebras.insert(name.clone(), Arc::new(a));
                }
                Err(e) => note("algebras", name, e.to_string()),
            }
        }

        let mut homs = BTreeMap::new();
        for (name, hj) in &j.homs {
            let built = lookup(&algebras, "algebra", &hj.algebra)
                .and_then(|a| json::hom_from_json(a, hj).map_err(|e| e.to_string()))
                .and_then(|phi| {
                    let report = phi.verify();
                    if report.is_valid() {
                        Ok(phi)
                    } else {
                        Err(format!(
                            "not an algebra homomorphism: {}",
                            report.violations.join("; ")
                        ))
                    }
                });
            match built {
                Ok(phi) => {
                    homs.insert(name.clone(), phi);
                }
                Err(e) => note("homs", name, e),
            }
        }

        let mut modules = BTreeMap::new();
        for (name, mj) in &j.modules {
            let built = lookup(&algebras, "algebra", &mj.algebra)
                .and_then(|a| json::module_from_json(a, mj).map_err(|e| e.to_string()));
            match built {
                Ok(m) => {
                    modules.insert(name.clone(), m);
                }
                Err(e) => note("modules", name, e),
            }
        }

        let mut complexes = BTreeMap::new();
        for (name, cj) in &j.complexes {
            let built = lookup(&algebras, "algebra", &cj.algebra)
                .and_then(|a| json::complex_from_json(a, cj).map_err(|e| e.to_string()));
            match built {
                Ok(x) => {
                    complexes.insert(name.clone(), x);
                }
                Err(e) => note("complexes", name, e),
            }
        }

        let mut chain_maps = BTreeMap::new();
        for (name, mj) in &j.chain_maps {
            let built = lookup(&complexes, "complex", &mj.source).and_then(|x| {
                let y = lookup(&complexes, "complex", &mj.target)?;
                json::chain_map_from_json(x, y, mj).map_err(|e| e.to_string())
            });
            match built {
                Ok(f) => {
                    chain_maps.insert(name.clone(), f);
                }
                Err(e) => note("chain_maps", name, e),
            }
        }

        let mut idempotents = BTreeMap::new();
        for (name, ij) in &j.idempotents {
            let built = lookup(&complexes, "complex", &ij.complex).and_then(|x| {
                let e =
                    json::components_from_json(x, x, &ij.components).map_err(|e| e.to_string())?;
                IdempotentObject::new(e).map_err(|e| e.to_string())
            });
            match built {
                Ok(p) => {
                    idempotents.insert(name.clone(), p);
                }
                Err(e) => note("idempotents", name, e),
            }
        }

        let mut matrices = BTreeMap::new();
        for (name, mj) in &j.matrices {
            let built = lookup(&algebras, "algebra", &mj.algebra).and_then(|a| {
                json::matrix_over_a_from_json(a, &mj.matrix).map_err(|e| e.to_string())
            });
            match built {
                Ok(m) => {
                    matrices.insert(name.clone(), m);
                }
                Err(e) => note("matrices", name, e),
            }
        }

        if let Some(name) = j.complexes.keys().find(|n| j.idempotents.contains_key(*n)) {
            note("idempotents", name, "name is also used by a complex".into());
        }

        if !errors.is_empty() {
            return Err(LoadError { errors });
        }
        Ok(Workspace {
            default_period: j.default_period.unwrap_or(Period::Infinite),
            default_depth: j.default_depth,
            homs,
            modules,
            complexes,
            chain_maps,
            idempotents,
            matrices,
        })
    }

    pub fn hom(&self, name: &str) -> Result<&MatAlgebraHom<F>, String> {
        lookup(&self.homs, "hom", name)
    }

    pub fn module(&self, name: &str) -> Result<&FdModule<F>, String> {
        lookup(&self.modules, "module", name)
    }

    pub fn complex(&self, name: &str) -> Result<&FreeComplex<F>, String> {
        lookup(&self.complexes, "complex", name)
    }

    pub fn chain_map(&self, name: &str) -> Result<&ChainMap<F>, String> {
        lookup(&self.chain_maps, "chain map", name)
    }

    pub fn idempotent(&self, name: &str) -> Result<&IdempotentObject<F>, String> {
        lookup(&self.idempotents, "idempotent", name)
    }

    pub fn matrix(&self, name: &str) -> Result<&MatrixOverA<F>, String> {
        lookup(&self.matrices, "matrix", name)
    }
}
