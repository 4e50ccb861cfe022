use serde::Serialize;

use super::{module_from_hom, multiplication_is_bijective, tor_dims, Side};
use crate::error::{Error, Result};
use crate::fdalg::MatAlgebraHom;
use crate::scalar::Scalar;

/// Depth-stamped evidence that `A -> B = M_n(K)` is a homological
/// epimorphism: `B (x)_A B -> B` bijective and `Tor_i(B, B) = 0` for
/// `1 <= i <= depth`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpiReport {
    pub depth: usize,
    pub dim_b: usize,
    pub tensor_dim: usize,
    pub mult_iso: bool,
    /// `dim Tor_1, ..., dim Tor_depth`.
    pub tor_vanishing: Vec<usize>,
    /// Lowest `i >= 1` with `Tor_i != 0`.
    pub first_obstruction: Option<usize>,
    pub passes: bool,
    pub verdict: String,
}

pub fn homological_epi_check<F: Scalar>(phi: &MatAlgebraHom<F>, depth: usize) -> Result<EpiReport> {
    if depth == 0 {
        return Err(Error::Precondition {
            op: "homological_epi_check",
            msg: "depth must be at least 1".into(),
        });
    }
    let (tensor_dim, mult_iso) = multiplication_is_bijective(phi)?;
    let right = module_from_hom(phi, Side::Right);
    let left = module_from_hom(phi, Side::Left);
    let tor = tor_dims(&right, &left, depth)?;
    let tor_vanishing = tor[1..].to_vec();
    let first_obstruction = tor_vanishing.iter().position(|&t| t != 0).map(|i| i + 1);
    let passes = mult_iso && first_obstruction.is_none();
    let verdict = if passes {
        format!("passes to depth {depth}")
    } else if !mult_iso {
        format!(
            "fails: B (x)_A B has dimension {tensor_dim}, B has dimension {}",
            phi.n() * phi.n()
        )
    } else {
        format!(
            "fails: Tor_{} != 0",
            first_obstruction.expect("some Tor is nonzero")
        )
    };
    Ok(EpiReport {
        depth,
        dim_b: phi.n() * phi.n(),
        tensor_dim,
        mult_iso,
        tor_vanishing,
        first_obstruction,
        passes,
        verdict,
    })
}
