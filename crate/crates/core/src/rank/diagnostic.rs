use serde::Serialize;

use super::{RankPoly, SylvesterRank};
use crate::coeff::Period;
use crate::error::{Error, Result};
use crate::fdalg::MatrixOverA;
use crate::homalg::{homological_epi_check, EpiReport};
use crate::perf::{FieldComplex, FreeComplex};
use crate::scalar::{Rational, Scalar};

/// `sum_n dim H_n(X) q^n` for a complex of vector spaces.
pub fn graded_dimension_rank<F: Scalar>(x: &FieldComplex<F>) -> RankPoly {
    RankPoly::normalize(
        x.homology_dims()
            .into_iter()
            .map(|(n, h)| (n, Rational::from_integer(h.into()))),
        Period::Infinite,
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalizingReport {
    pub n: usize,
    /// `rho(A) = 1`.
    pub normalized: bool,
    /// `n rho(e_i)` is an integer for every basis element.
    pub integral: bool,
    pub epi: EpiReport,
    pub localizing: bool,
    pub conclusion: String,
}

/// Depth-stamped evidence for whether the rank function of `A -> M_n(K)` is
/// localizing. Tor nonvanishing refutes; vanishing up to the depth is only
/// consistent.
pub fn localizing_diagnostic<F: Scalar>(
    sigma: &SylvesterRank<F>,
    depth: usize,
) -> Result<LocalizingReport> {
    if depth == 0 {
        return Err(Error::Precondition {
            op: "localizing_diagnostic",
            msg: "depth must be at least 1".into(),
        });
    }
    let a = sigma.hom().source();
    let n = sigma.n();
    let normalized = sigma.derived_object_rank(&FreeComplex::unit(a.clone()))? == super::rank_one();
    let mut integral = true;
    for i in 0..a.dim() {
        let r = sigma.sylvester_morphism_rank(&MatrixOverA::single(a.clone(), a.basis(i)))?;
        integral &= (r * Rational::from_integer(n.into())).is_integer();
    }
    let epi = homological_epi_check(sigma.hom(), depth)?;
    let localizing = normalized && integral && epi.passes;
    let conclusion = if localizing {
        format!("consistent with localizing to depth {depth}")
    } else if let Some(i) = epi.first_obstruction {
        format!("not localizing (Tor obstruction at degree {i})")
    } else if !epi.mult_iso {
        "not localizing (B (x)_A B -> B is not bijective)".to_string()
    } else {
        "not a normalized prime rank function".to_string()
    };
    Ok(LocalizingReport {
        n,
        normalized,
        integral,
        epi,
        localizing,
        conclusion,
    })
}
