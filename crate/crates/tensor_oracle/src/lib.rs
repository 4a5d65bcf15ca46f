//! Brute-force oracle: every operator of the protocol built as an explicit
//! matrix on `(C^d)^{⊗n}` and checked against the closed forms in `mpbt`.
//!
//! All operators involved are real in the computational basis, so matrices
//! are stored as `f64`.

mod dense;
pub mod analysis;
pub mod block;
pub mod commutant;
pub mod lemmas;
pub mod operators;
pub mod suite;

use mpbt::MpbtError;
use symgroup::SymError;

pub use analysis::{GridPoint, SdpReport, SpectrumCheck, SrmFidelity};
pub use commutant::{Commutant, FLabel};
pub use lemmas::{lemma_checks, LEMMA_TOLERANCE};
pub use suite::{desk_grid, grid_checks, verify_suite, CheckResult};
pub use block::{young_projectors, BlockOperator, Layout};
pub use dense::{checked_dim, digits, index_of, DenseOperator, DEFAULT_MAX_DIM};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error("d^n = {d}^{n} exceeds the dimension cap {max_dim}")]
    ResourceCap { d: usize, n: usize, max_dim: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid sites: {0}")]
    InvalidSites(String),
    #[error("not a tuple of distinct ports: {0:?}")]
    InvalidTuple(Vec<usize>),
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    #[error("sums over S({sites}) are limited to {max} sites")]
    GroupSumGuard { sites: usize, max: usize },
    #[error("Young projectors on {m} sites with d = {d} cannot be separated by the class sum")]
    SpectralCollision { m: usize, d: usize },
    #[error("entry ({row}, {col}) falls outside the block structure")]
    OffBlock { row: usize, col: usize },
    #[error("support of rho has rank {rank}, the spectrum predicts {expected}")]
    Support { rank: usize, expected: String },
    #[error(transparent)]
    Protocol(#[from] MpbtError),
    #[error(transparent)]
    Sym(#[from] SymError),
}
