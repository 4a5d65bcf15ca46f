//! The full verification suite: representation-theory identities, the named
//! commutant identities at small instances, and the closed forms against the
//! oracle on every grid point under the dimension cap.

use std::fmt;

use mpbt::{fidelity, spectrum, success_probability, trace_residual, ProtocolParams};
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use partitions::{enumerate_diagrams, irrep_dimension, sw_multiplicity};
use symgroup::{schur_orthogonality_residual, sum_rule_sweep};

use crate::analysis::{GridPoint, PSD_TOLERANCE};
use crate::dense::checked_dim;
use crate::lemmas::{irrep_sum_expansion, lemma_checks, LEMMA_TOLERANCE};
use crate::OracleError;

/// Relative tolerance between the fidelity formula and the measured fidelity.
pub const FIDELITY_TOLERANCE: f64 = 1e-9;
/// Absolute tolerance for probabilities, eigenvalues and constraint residuals.
pub const GRID_TOLERANCE: f64 = 1e-10;
/// Tolerance for the two constructions of ρ.
pub const ROUTE_TOLERANCE: f64 = 1e-12;

/// Instances at which the commutant identities are checked.
pub const LEMMA_POINTS: [(usize, usize, usize); 3] = [(2, 1, 2), (3, 1, 2), (4, 2, 2)];

/// Largest `n` for the Schur orthogonality and sum-rule checks.
pub const SYMMETRIC_GROUP_MAX: usize = 5;
/// Largest `n` for the Schur–Weyl dimension count.
pub const SCHUR_WEYL_MAX: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub params: Option<ProtocolParams>,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckResult {
    pub fn new(name: &str, params: Option<ProtocolParams>, residual: f64, tolerance: f64) -> Self {
        Self { name: name.to_string(), params, residual, tolerance, passed: residual <= tolerance }
    }

    /// A check whose outcome is exact; the residual is 0 or 1.
    pub fn exact(name: &str, params: Option<ProtocolParams>, holds: bool) -> Self {
        Self::new(name, params, if holds { 0.0 } else { 1.0 }, 0.0)
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {}", self.name)?;
        if let Some(p) = &self.params {
            write!(f, " (N={}, k={}, d={})", p.ports(), p.teleported(), p.dim())?;
        }
        write!(f, " residual={:.3e} tol={:.0e}", self.residual, self.tolerance)
    }
}

/// Every `(N, k, d)` with `1 ≤ k ≤ ⌊N/2⌋` and `d^{N+k} ≤ max_dim`, ordered by
/// `N`, then `k`, then `d`.
pub fn desk_grid(max_dim: usize) -> Vec<ProtocolParams> {
    let mut out = Vec::new();
    for ports in 2.. {
        if checked_dim(2, ports + 1).is_none_or(|x| x > max_dim) {
            break;
        }
        for k in 1..=ports / 2 {
            for d in 2.. {
                if checked_dim(d, ports + k).is_none_or(|x| x > max_dim) {
                    break;
                }
                out.push(ProtocolParams::new(ports, k, d).expect("valid by construction"));
            }
        }
    }
    out
}

/// Closed forms against the oracle at one instance.
pub fn grid_checks(params: &ProtocolParams, max_dim: usize) -> Result<Vec<CheckResult>, OracleError> {
    let p = Some(*params);
    let point = GridPoint::new(params, max_dim)?;
    let mut out = vec![CheckResult::new("rho_routes", p, point.route_residual(), ROUTE_TOLERANCE)];

    let spec = point.spectrum_check();
    out.push(CheckResult::new("spectrum_eigenvalues", p, spec.max_deviation, GRID_TOLERANCE));
    out.push(CheckResult::exact("spectrum_multiplicities", p, spec.multiplicities_match));
    out.push(CheckResult::exact("trace_identity", p, trace_residual(params, &spectrum(params)).is_zero()));

    let srm = point.srm_fidelity()?;
    let formula = fidelity(params);
    out.push(CheckResult::new("srm_fidelity", p, (srm.full_sum - formula).abs() / formula, FIDELITY_TOLERANCE));
    out.push(CheckResult::new("srm_covariance_shortcut", p, (srm.shortcut - srm.full_sum).abs(), GRID_TOLERANCE));
    out.push(CheckResult::new("povm_completeness", p, srm.completeness_residual, GRID_TOLERANCE));

    let sdp = point.sdp_check(max_dim)?;
    let prob = success_probability(params).value.to_f64().expect("finite");
    out.push(CheckResult::new("primal_probability", p, (sdp.primal_value - prob).abs(), GRID_TOLERANCE));
    out.push(CheckResult::new("dual_probability", p, (sdp.dual_value - prob).abs(), GRID_TOLERANCE));
    let primal_violation = (-sdp.theta_min_eigenvalue).max(sdp.primal_max_eigenvalue - 1.0).max(0.0);
    out.push(CheckResult::new("primal_constraints", p, primal_violation, PSD_TOLERANCE));
    out.push(CheckResult::new("dual_positivity", p, (-sdp.omega_min_eigenvalue).max(0.0), PSD_TOLERANCE));
    out.push(CheckResult::new("dual_slack_identity", p, sdp.dual_trace_residual, GRID_TOLERANCE));
    out.push(CheckResult::new("eigenprojector_idempotence", p, sdp.projector_residual, GRID_TOLERANCE));
    Ok(out)
}

/// `Σ_{μ ⊢ n} m_μ d_μ = d^n` in exact arithmetic.
pub fn schur_weyl_complete(n: usize, d: usize) -> bool {
    let total: BigUint = enumerate_diagrams(n, d).iter().map(|mu| sw_multiplicity(mu, d) * irrep_dimension(mu)).sum();
    total == BigUint::from(d).pow(n as u32)
}

/// Identities of the symmetric group and its Schur–Weyl pairing.
pub fn representation_checks(max_dim: usize, seed: u64) -> Result<Vec<CheckResult>, OracleError> {
    let mut out = Vec::new();
    for n in 1..=SYMMETRIC_GROUP_MAX {
        out.push(CheckResult::new(&format!("schur_orthogonality_n{n}"), None, schur_orthogonality_residual(n), GRID_TOLERANCE));
    }
    for n in 2..=SYMMETRIC_GROUP_MAX {
        for m in [n - 1, n - 2] {
            let (residual, _) = sum_rule_sweep(n, m);
            out.push(CheckResult::new(&format!("coset_sum_rule_n{n}_m{m}"), None, residual, GRID_TOLERANCE));
        }
    }
    for d in [2, 3] {
        let holds = (1..=SCHUR_WEYL_MAX).all(|n| schur_weyl_complete(n, d));
        out.push(CheckResult::exact(&format!("schur_weyl_dimension_d{d}"), None, holds));
    }
    for d in [2, 3] {
        let residual = irrep_sum_expansion(3, d, max_dim, seed.wrapping_add(d as u64))?;
        out.push(CheckResult::new(&format!("irrep_sum_expansion_n3_d{d}"), None, residual, LEMMA_TOLERANCE));
    }
    Ok(out)
}

/// Commutant identities at each of [`LEMMA_POINTS`] that fits under the cap.
pub fn lemma_suite(max_dim: usize, seed: u64) -> Result<Vec<CheckResult>, OracleError> {
    let mut out = Vec::new();
    for (i, &(ports, k, d)) in LEMMA_POINTS.iter().enumerate() {
        if checked_dim(d, ports + k).is_none_or(|x| x > max_dim) {
            continue;
        }
        let params = ProtocolParams::new(ports, k, d)?;
        out.extend(lemma_checks(&params, max_dim, seed.wrapping_add(i as u64))?);
    }
    Ok(out)
}

/// Everything above, in a fixed order. Identical inputs give identical residuals.
pub fn verify_suite(max_dim: usize, seed: u64) -> Result<Vec<CheckResult>, OracleError> {
    let mut out = representation_checks(max_dim, seed)?;
    out.extend(lemma_suite(max_dim, seed)?);
    for params in desk_grid(max_dim) {
        out.extend(grid_checks(&params, max_dim)?);
    }
    Ok(out)
}
