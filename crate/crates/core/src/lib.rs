//! Rank functions on perfect complexes over finite-dimensional algebras.
//!
//! Everything is generic over an exact field [`scalar::Scalar`]; the aliases
//! below fix it to the rationals.

pub mod axioms;
pub mod coeff;
pub mod error;
pub mod fdalg;
pub mod homalg;
pub mod json;
pub mod linal;
pub mod perf;
pub mod rank;
pub mod scalar;

pub use coeff::{CoeffPoly, Period};
pub use error::{Error, Result};
pub use rank::RankPoly;
pub use scalar::{FieldSpec, Fp, Rational, Scalar};

pub type QMatrix = linal::Matrix<Rational>;
pub type QAlgebra = fdalg::FdAlgebra<Rational>;
pub type QMatrixOverA = fdalg::MatrixOverA<Rational>;
pub type QHom = fdalg::MatAlgebraHom<Rational>;
pub type QModule = homalg::FdModule<Rational>;
pub type QComplex = perf::FreeComplex<Rational>;
pub type QChainMap = perf::ChainMap<Rational>;
pub type QSylvesterRank = rank::SylvesterRank<Rational>;
