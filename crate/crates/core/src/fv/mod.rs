//! Constructible-set algebra and the guarded (Feferman–Vaught style)
//! decomposition of pp formulas over global Bézout backends.

pub mod cs;
mod decompose;

use thiserror::Error;

use crate::qe::QeError;
use crate::ring::RingError;

pub use cs::{ConstructibleSet, CsExpr};
pub use decompose::{
    decompose, localize_body, localize_piece, split_cases, GuardedFormula, Piece, SymbolicOracle, FORK_CAP,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FvError {
    #[error("decomposition needs a global backend; {0} is a valuation ring, use qe directly")]
    ValuationBackend(String),
    #[error("case tree exceeded {0} elimination runs")]
    ForkCap(usize),
    #[error("maximal ideal ({0}) is outside the guard {1}")]
    OutsideGuard(String, String),
    #[error(transparent)]
    Qe(#[from] QeError),
    #[error(transparent)]
    Ring(#[from] RingError),
}
