//! Closed-form performance of multi-port-based teleportation.
//!
//! `N` ports share maximally entangled pairs of local dimension `d`, and `k`
//! systems are teleported at once. Everything is expressed through Young
//! diagrams `alpha ⊢ N-k` and `mu ⊢ N` with at most `d` rows: the spectrum of
//! the teleportation operator, the entanglement fidelity of the deterministic
//! scheme and the success probability of the probabilistic one.

mod params;
mod performance;
mod spectrum;

use partitions::YoungDiagram;

pub use params::ProtocolParams;
pub use performance::{
    compare_protocols, fidelity, fidelity_formula, fidelity_terms, optimal_outcome, pbt_fidelity, report,
    success_probability, Comparison, FidelityTerm, OptimalChoice, PerformanceReport, SuccessProbability,
};
pub use spectrum::{eigenvalue, outer_diagrams, rank, reachable, spectrum, trace_residual, SpectrumEntry};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MpbtError {
    #[error("invalid protocol: N = {ports}, k = {teleported}, d = {dim} (need N ≥ 1, d ≥ 2, 1 ≤ k ≤ ⌊N/2⌋)")]
    InvalidParams { ports: usize, teleported: usize, dim: usize },
    #[error("{mu} is not obtained from {alpha} by adding the teleported boxes")]
    NotReachable { alpha: YoungDiagram, mu: YoungDiagram },
    #[error("{diagram} has more than {dim} rows")]
    TooManyRows { diagram: YoungDiagram, dim: usize },
}
