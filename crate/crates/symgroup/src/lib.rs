//! The symmetric group `S(n)`: permutations, coset representatives and real
//! orthogonal irreducible matrices in Young's orthogonal form.

mod irrep;
mod perm;
mod prir;

pub use irrep::{young_orthogonal_rep, IrrepMatrix, OrthogonalIrrep};
pub use perm::{all_permutations, compose, coset_transversal, invert, Permutation};
pub use prir::{
    blocks_of, prir_index, prir_position, prir_sum, prir_sum_check, prir_sum_expected, restriction_blocks,
    schur_orthogonality_residual, sum_rule_sweep, PrirIndex, RestrictionBlock, SumRuleBlocks,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymError {
    #[error("permutations act on different sets: S({0}) vs S({1})")]
    DegreeMismatch(usize, usize),
    #[error("not a permutation in one-line notation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("incompatible restriction blocks: {0}")]
    IncompatibleBlocks(String),
}
