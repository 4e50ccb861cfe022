//! Seeded property harness for the axioms of rank functions.
//!
//! Each sample draws from its own ChaCha stream `(seed, index)`, samples run
//! in parallel and are merged in index order, so a report depends only on
//! the seed, the configuration, the rank function and the period. The first
//! failing sample is recorded with its serialized inputs and can be re-run
//! alone with the `*_sample` functions.

mod sample;
mod suites;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use sample::{sample_rng, Sampler};
pub use suites::{
    check_lemma_suite, check_rank_axioms, check_sylvester_axioms, lemma_sample, rank_sample,
    sylvester_sample,
};

use crate::coeff::Period;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub seed: u64,
    pub samples: usize,
    /// Maximal number of nonzero degrees of a random complex.
    pub max_degrees: usize,
    /// Maximal free rank in one degree, and maximal matrix size.
    pub max_rank: usize,
    /// Probability that a coordinate or a basis vector is used.
    pub density: f64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            seed: 0,
            samples: 200,
            max_degrees: 3,
            max_rank: 2,
            density: 0.5,
        }
    }
}

impl SampleConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| {
            Err(Error::Precondition {
                op: "sample_config",
                msg: msg.into(),
            })
        };
        if self.samples == 0 || self.max_degrees == 0 || self.max_rank == 0 {
            return bad("samples, max_degrees and max_rank must be positive");
        }
        if !(self.density > 0.0 && self.density <= 1.0) {
            return bad("density must lie in (0, 1]");
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub axiom: String,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub axiom: String,
    pub seed: u64,
    pub sample: u64,
    pub detail: String,
    /// The sampled data, in the workspace wire format.
    pub inputs: BTreeMap<String, serde_json::Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub suite: String,
    pub rank: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub period: Option<Period>,
    pub seed: u64,
    pub samples: usize,
    pub tallies: Vec<Tally>,
    pub first_counterexample: Option<Counterexample>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.tallies.iter().all(|t| t.failed == 0)
    }

    pub fn tally(&self, axiom: &str) -> Option<&Tally> {
        self.tallies.iter().find(|t| t.axiom == axiom)
    }

    pub fn failed_axioms(&self) -> Vec<&str> {
        self.tallies
            .iter()
            .filter(|t| t.failed > 0)
            .map(|t| t.axiom.as_str())
            .collect()
    }
}

/// Outcome of one check within one sample.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub axiom: &'static str,
    pub result: std::result::Result<(), String>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SampleResult {
    pub outcomes: Vec<Outcome>,
    /// Present when some check failed.
    pub inputs: Option<BTreeMap<String, serde_json::Value>>,
}

impl SampleResult {
    pub fn failures(&self) -> impl Iterator<Item = &Outcome> {
        self.outcomes.iter().filter(|o| o.result.is_err())
    }
}

pub(crate) fn run<S>(
    suite: &str,
    rank: String,
    period: Option<Period>,
    cfg: &SampleConfig,
    sample: S,
) -> Result<AxiomReport>
where
    S: Fn(u64) -> SampleResult + Sync,
{
    cfg.validate()?;
    let results: Vec<SampleResult> = (0..cfg.samples as u64)
        .into_par_iter()
        .map(&sample)
        .collect();
    let mut tallies: Vec<Tally> = Vec::new();
    let mut first = None;
    for (index, r) in results.iter().enumerate() {
        for o in &r.outcomes {
            let t = match tallies.iter_mut().find(|t| t.axiom == o.axiom) {
                Some(t) => t,
                None => {
                    tallies.push(Tally {
                        axiom: o.axiom.into(),
                        passed: 0,
                        failed: 0,
                    });
                    tallies.last_mut().expect("just pushed")
                }
            };
            match &o.result {
                Ok(()) => t.passed += 1,
                Err(detail) => {
                    t.failed += 1;
                    if first.is_none() {
                        first = Some(Counterexample {
                            axiom: o.axiom.into(),
                            seed: cfg.seed,
                            sample: index as u64,
                            detail: detail.clone(),
                            inputs: r.inputs.clone().unwrap_or_default(),
                        });
                    }
                }
            }
        }
    }
    Ok(AxiomReport {
        suite: suite.into(),
        rank,
        period,
        seed: cfg.seed,
        samples: cfg.samples,
        tallies,
        first_counterexample: first,
    })
}
