//! Per-grid-point oracle: ρ, its spectrum, the square-root measurement
//! fidelity and the analytic SDP solution, all in weight-sector form.

use std::collections::BTreeMap;
use std::sync::Arc;

use mpbt::{eigenvalue, outer_diagrams, reachable, spectrum, ProtocolParams};
use nalgebra::{DMatrix, Dyn, SymmetricEigen};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use partitions::{path_count, sw_multiplicity};
use symgroup::coset_transversal;

use crate::block::{young_projectors, BlockOperator, Layout};
use crate::dense::{digits, index_of, require_dim};
use crate::operators::{permute_index, reference_pairs, reference_tuple, signal_pairs, signal_tuples, signal_weight};
use crate::OracleError;

/// Relative cutoff below which eigenvalues of ρ count as zero.
pub const SUPPORT_CUTOFF: f64 = 1e-10;
/// Threshold for positivity and operator-inequality tests.
pub const PSD_TOLERANCE: f64 = 1e-10;

/// Index arithmetic for one outcome: `x(r, u) = base[r] + pair[u]`, where `r`
/// fills the ports outside the tuple in increasing order and `u` fills both
/// the chosen ports and the teleported legs.
#[derive(Debug, Clone)]
pub(crate) struct Wiring {
    pub base: Vec<usize>,
    pub pair: Vec<usize>,
}

impl Wiring {
    pub fn new(params: &ProtocolParams, tuple: &[usize]) -> Self {
        let (d, n, ports, k) = (params.dim(), params.sites(), params.ports(), params.teleported());
        let weight = |site: usize| d.pow((n - site) as u32);
        let rest: Vec<usize> = (1..=ports).filter(|s| !tuple.contains(s)).collect();
        let base = (0..d.pow(rest.len() as u32))
            .map(|r| digits(r, d, rest.len()).iter().zip(&rest).map(|(&v, &s)| v * weight(s)).sum())
            .collect();
        let pairs = signal_pairs(tuple, params);
        let pair = (0..d.pow(k as u32))
            .map(|u| digits(u, d, k).iter().zip(&pairs).map(|(&v, &(a, b))| v * (weight(a) + weight(b))).sum())
            .collect();
        Self { base, pair }
    }

    pub fn index(&self, r: usize, u: usize) -> usize {
        self.base[r] + self.pair[u]
    }
}

/// Adds `scale · X ⊗ Σ_{u,v} |uu⟩⟨vv|` with `X` on the ports outside the tuple.
pub(crate) fn place_with_pairs(
    target: &mut BlockOperator,
    x: &BlockOperator,
    wiring: &Wiring,
    scale: f64,
) -> Result<(), OracleError> {
    let inner = Arc::clone(x.layout());
    let pairs = wiring.pair.len();
    for b in 0..inner.block_count() {
        let mem = inner.members(b);
        let block = x.block(b);
        for (i, &r) in mem.iter().enumerate() {
            for (j, &s) in mem.iter().enumerate() {
                let v = block[(i, j)];
                if v == 0.0 {
                    continue;
                }
                for u in 0..pairs {
                    for w in 0..pairs {
                        target.add_entry(wiring.index(r, u), wiring.index(s, w), scale * v)?;
                    }
                }
            }
        }
    }
    Ok(())
}

/// Eigenvalues of ρ, grouped by exact value.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumCheck {
    /// Largest distance between a numerical eigenvalue and the predicted value it was assigned to.
    pub max_deviation: f64,
    /// Whether every predicted eigenvalue (including zero) occurs with the predicted multiplicity.
    pub multiplicities_match: bool,
    pub numeric_rank: usize,
    pub predicted_rank: usize,
    /// `(value, predicted multiplicity, observed multiplicity)` per distinct value.
    pub table: Vec<(f64, usize, usize)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SrmFidelity {
    /// `d^{-2k} Σ_i tr(Π_i σ_i)` over every outcome.
    pub full_sum: f64,
    /// `|I| d^{-2k} tr(Π_{i0} σ_{i0})`.
    pub shortcut: f64,
    pub support_rank: usize,
    /// `‖ρ^{-1/2} ρ ρ^{-1/2} − Π_supp‖`, i.e. the deviation of `Σ_i Π_i` from the identity.
    pub completeness_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SdpReport {
    /// `|I| tr Θ / d^{N+k}`.
    pub primal_value: f64,
    /// `tr Ω / d^{N+k}`.
    pub dual_value: f64,
    pub theta_min_eigenvalue: f64,
    /// Largest eigenvalue of `Σ_i P⁺_{A_i C} ⊗ Θ_{Ā_i}`; feasible when at most one.
    pub primal_max_eigenvalue: f64,
    pub omega_min_eigenvalue: f64,
    /// Largest deviation of `tr_{A_i C}(P⁺ Ω)` from the identity over all outcomes.
    pub dual_trace_residual: f64,
    /// Largest deviation of the chosen `F_μ(α)` from idempotence.
    pub projector_residual: f64,
}

impl SdpReport {
    pub fn primal_feasible(&self) -> bool {
        self.theta_min_eigenvalue >= -PSD_TOLERANCE && self.primal_max_eigenvalue <= 1.0 + PSD_TOLERANCE
    }

    pub fn dual_feasible(&self) -> bool {
        self.omega_min_eigenvalue >= -PSD_TOLERANCE && self.dual_trace_residual <= PSD_TOLERANCE
    }
}

/// ρ for one protocol instance, with its sector-wise eigendecomposition.
pub struct GridPoint {
    params: ProtocolParams,
    layout: Arc<Layout>,
    tuples: Vec<Vec<usize>>,
    wirings: Vec<Wiring>,
    rho: BlockOperator,
    route_residual: f64,
    eigen: Vec<SymmetricEigen<f64, Dyn>>,
}

impl GridPoint {
    pub fn new(params: &ProtocolParams, max_dim: usize) -> Result<Self, OracleError> {
        let (d, n, ports) = (params.dim(), params.sites(), params.ports());
        require_dim(d, n, max_dim)?;
        let layout = Layout::new(d, n, ports, max_dim)?;
        let tuples = signal_tuples(params);
        let wirings: Vec<Wiring> = tuples.iter().map(|t| Wiring::new(params, t)).collect();
        let w = signal_weight(params);

        let mut rho = BlockOperator::zeros(&layout);
        for wiring in &wirings {
            for &base in &wiring.base {
                for &u in &wiring.pair {
                    for &v in &wiring.pair {
                        rho.add_entry(base + u, base + v, w)?;
                    }
                }
            }
        }

        let mut from_cosets = BlockOperator::zeros(&layout);
        let reference = v_k_entries(params);
        for tau in coset_transversal(ports, ports - params.teleported()) {
            let inv = tau.inverse().extend(n);
            let moved: Vec<usize> = (0..layout.dim()).map(|x| permute_index(&inv, &digits(x, d, n), d)).collect();
            for &(a, b) in &reference {
                from_cosets.add_entry(moved[a], moved[b], w)?;
            }
        }
        let route_residual = rho.distance(&from_cosets)?;
        let eigen = rho.eigen();
        Ok(Self { params: *params, layout, tuples, wirings, rho, route_residual, eigen })
    }

    pub fn params(&self) -> &ProtocolParams {
        &self.params
    }

    pub fn layout(&self) -> &Arc<Layout> {
        &self.layout
    }

    pub fn rho(&self) -> &BlockOperator {
        &self.rho
    }

    /// Deviation between ρ as a sum of signals and as a sum over coset representatives.
    pub fn route_residual(&self) -> f64 {
        self.route_residual
    }

    fn largest_eigenvalue(&self) -> f64 {
        self.eigen.iter().flat_map(|e| e.eigenvalues.iter().copied()).fold(0.0, f64::max)
    }

    /// Assigns every eigenvalue to the nearest predicted value (zero included)
    /// and compares multiplicities per distinct value.
    pub fn spectrum_check(&self) -> SpectrumCheck {
        let mut predicted: BTreeMap<BigRational, (f64, usize)> = BTreeMap::new();
        let entries = spectrum(&self.params);
        let mut predicted_rank = 0;
        for e in &entries {
            let m = e.multiplicity.to_usize().expect("multiplicity fits");
            predicted_rank += m;
            let slot = predicted.entry(e.eigenvalue.clone()).or_insert((e.eigenvalue.to_f64().unwrap(), 0));
            slot.1 += m;
        }
        let dim = self.layout.dim();
        let mut values: Vec<(f64, usize, usize)> = predicted.values().map(|&(v, m)| (v, m, 0)).collect();
        values.insert(0, (0.0, dim - predicted_rank, 0));
        let mut max_deviation = 0.0f64;
        let mut numeric_rank = 0;
        let cut = SUPPORT_CUTOFF * self.largest_eigenvalue();
        for e in &self.eigen {
            for &x in e.eigenvalues.iter() {
                if x > cut {
                    numeric_rank += 1;
                }
                let (slot, dev) = values
                    .iter()
                    .enumerate()
                    .map(|(i, &(v, _, _))| (i, (v - x).abs()))
                    .min_by(|a, b| a.1.total_cmp(&b.1))
                    .expect("zero is always a candidate");
                values[slot].2 += 1;
                max_deviation = max_deviation.max(dev);
            }
        }
        let multiplicities_match = values.iter().all(|&(_, p, o)| p == o);
        SpectrumCheck { max_deviation, multiplicities_match, numeric_rank, predicted_rank, table: values }
    }

    /// `ρ^{-1/2}` on the support, and the support projector.
    fn inverse_sqrt(&self) -> (BlockOperator, BlockOperator, usize) {
        let cut = SUPPORT_CUTOFF * self.largest_eigenvalue();
        let mut a = BlockOperator::zeros(&self.layout);
        let mut supp = BlockOperator::zeros(&self.layout);
        let mut rank = 0;
        for (b, e) in self.eigen.iter().enumerate() {
            let kept: Vec<usize> = (0..e.eigenvalues.len()).filter(|&c| e.eigenvalues[c] > cut).collect();
            rank += kept.len();
            let v = e.eigenvectors.select_columns(&kept);
            let mut w = v.clone();
            for (j, &c) in kept.iter().enumerate() {
                let mut col = w.column_mut(j);
                col /= e.eigenvalues[c].sqrt();
            }
            *a.block_mut(b) = &w * v.transpose();
            *supp.block_mut(b) = &v * v.transpose();
        }
        (a, supp, rank)
    }

    /// Entanglement fidelity of the square-root measurement, evaluated from the
    /// POVM elements `ρ^{-1/2} σ_i ρ^{-1/2} + Δ`.
    pub fn srm_fidelity(&self) -> Result<SrmFidelity, OracleError> {
        let (a, supp, support_rank) = self.inverse_sqrt();
        let expected = mpbt::rank(&spectrum(&self.params));
        if expected.to_usize() != Some(support_rank) {
            return Err(OracleError::Support { rank: support_rank, expected: expected.to_string() });
        }
        let completeness_residual = a.mul(&self.rho)?.mul(&a)?.distance(&supp)?;

        let d = self.params.dim() as f64;
        let count = self.tuples.len() as f64;
        let w = signal_weight(&self.params);
        let per_outcome = |wiring: &Wiring| -> f64 {
            let pi_sigma = self.quadratic_overlap(&a, wiring) * w * w;
            let supp_sigma = self.quadratic_trace(&supp, wiring) * w;
            let delta_sigma = (1.0 - supp_sigma) / count;
            pi_sigma + delta_sigma
        };
        let mut terms: Vec<f64> = self.wirings.iter().map(per_outcome).collect();
        terms.sort_by(|x, y| y.total_cmp(x));
        let scale = d.powi(2 * self.params.teleported() as i32);
        let full_sum = terms.iter().sum::<f64>() / scale;
        let i0 = self.tuples.iter().position(|t| *t == reference_tuple(&self.params)).expect("reference outcome");
        let shortcut = count * per_outcome(&self.wirings[i0]) / scale;
        Ok(SrmFidelity { full_sum, shortcut, support_rank, completeness_residual })
    }

    /// `Σ_{r,r'} (Σ_{u,u'} X[x(r,u), x(r',u')])²`, i.e. `d^{2N} tr(X σ X σ)`.
    fn quadratic_overlap(&self, x: &BlockOperator, wiring: &Wiring) -> f64 {
        let by_block = self.group_by_block(wiring);
        let mut total = 0.0;
        for (b, rs) in by_block.iter().enumerate() {
            let block = x.block(b);
            let locals: Vec<Vec<usize>> =
                rs.iter().map(|&r| wiring.pair.iter().map(|&u| self.layout.local(wiring.base[r] + u)).collect()).collect();
            let mut rows = DMatrix::<f64>::zeros(locals.len(), block.ncols());
            for (i, li) in locals.iter().enumerate() {
                for &p in li {
                    let mut row = rows.row_mut(i);
                    row += block.row(p);
                }
            }
            for i in 0..locals.len() {
                for lj in &locals {
                    let g: f64 = lj.iter().map(|&q| rows[(i, q)]).sum();
                    total += g * g;
                }
            }
        }
        total
    }

    /// `Σ_r Σ_{u,u'} X[x(r,u), x(r,u')]`, i.e. `d^N tr(X σ)`.
    fn quadratic_trace(&self, x: &BlockOperator, wiring: &Wiring) -> f64 {
        let mut total = 0.0;
        for &base in &wiring.base {
            for &u in &wiring.pair {
                for &v in &wiring.pair {
                    total += x.get(base + u, base + v);
                }
            }
        }
        total
    }

    /// Port configurations `r` grouped by the sector of `x(r, ·)`.
    fn group_by_block(&self, wiring: &Wiring) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.layout.block_count()];
        for (r, &base) in wiring.base.iter().enumerate() {
            out[self.layout.block_of(base + wiring.pair[0])].push(r);
        }
        out
    }

    /// Builds `Θ` and `Ω` of the analytic SDP solution and checks their constraints.
    pub fn sdp_check(&self, max_dim: usize) -> Result<SdpReport, OracleError> {
        let p = &self.params;
        let (d, ports, k) = (p.dim(), p.ports(), p.teleported());
        let outer_layout = Layout::new(d, ports - k, ports - k, max_dim)?;
        let outer = young_projectors(&outer_layout)?;
        let port_layout = Layout::new(d, ports, ports, max_dim)?;
        let port_projectors = young_projectors(&port_layout)?;
        let d_n = (d as f64).powi(ports as i32);
        let d_k = (d as f64).powi(k as i32);
        let d_nk = d_n * d_k;

        let mut theta = BlockOperator::zeros(&outer_layout);
        let mut omega = BlockOperator::zeros(&self.layout);
        let mut projector_residual = 0.0f64;
        for alpha in outer_diagrams(p) {
            let p_alpha = &outer.iter().find(|(a, _)| *a == alpha).expect("enumerated together").1;
            let mus = reachable(p, &alpha);
            let lambdas: Vec<_> = mus.iter().map(|mu| eigenvalue(p, &alpha, mu)).collect::<Result<_, _>>()?;
            let best = mpbt::optimal_outcome(&lambdas).expect("nonempty");
            let (mu, lambda) = (&mus[best], lambdas[best].to_f64().expect("finite"));
            theta.add_scaled(p_alpha, (d_k / d_n) / lambda)?;

            let mut r_alpha = BlockOperator::zeros(&self.layout);
            for wiring in &self.wirings {
                place_with_pairs(&mut r_alpha, p_alpha, wiring, 1.0)?;
            }
            let p_mu = &port_projectors.iter().find(|(m, _)| m == mu).expect("enumerated together").1;
            let f = self.extend_ports(p_mu)?.mul(&r_alpha)?.scale(1.0 / (d_n * lambda));
            projector_residual = projector_residual.max(f.mul(&f)?.distance(&f)?);
            let (m_alpha, m_mu) = (big(&sw_multiplicity(&alpha, d)), big(&sw_multiplicity(mu, d)));
            let paths = big(&path_count(mu, &alpha, d));
            omega.add_scaled(&f, d_k * m_alpha / (paths * m_mu))?;
        }

        let count = self.tuples.len() as f64;
        let mut primal = BlockOperator::zeros(&self.layout);
        for wiring in &self.wirings {
            place_with_pairs(&mut primal, &theta, wiring, 1.0 / d_k)?;
        }
        let mut dual_trace_residual = 0.0f64;
        for wiring in &self.wirings {
            dual_trace_residual = dual_trace_residual.max(self.dual_slack_residual(&omega, wiring, &outer_layout, d_k));
        }
        Ok(SdpReport {
            primal_value: count * theta.trace() / d_nk,
            dual_value: omega.trace() / d_nk,
            theta_min_eigenvalue: theta.eigen_range().0,
            primal_max_eigenvalue: primal.eigen_range().1,
            omega_min_eigenvalue: omega.eigen_range().0,
            dual_trace_residual,
            projector_residual,
        })
    }

    /// `X ⊗ 1` with `X` on the ports and the identity on the teleported legs.
    fn extend_ports(&self, x: &BlockOperator) -> Result<BlockOperator, OracleError> {
        let inner = Arc::clone(x.layout());
        let legs = self.layout.dim() / inner.dim();
        let mut out = BlockOperator::zeros(&self.layout);
        for b in 0..inner.block_count() {
            let mem = inner.members(b);
            for (i, &r) in mem.iter().enumerate() {
                for (j, &s) in mem.iter().enumerate() {
                    let v = x.block(b)[(i, j)];
                    if v != 0.0 {
                        for t in 0..legs {
                            out.add_entry(r * legs + t, s * legs + t, v)?;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Deviation of `tr_{A_i C}(P⁺_{A_i C} Ω)` from the identity on the other ports.
    fn dual_slack_residual(&self, omega: &BlockOperator, wiring: &Wiring, outer: &Arc<Layout>, d_k: f64) -> f64 {
        let mut worst = 0.0f64;
        for b in 0..outer.block_count() {
            let mem = outer.members(b);
            for &r in mem {
                for &s in mem {
                    let mut x = 0.0;
                    for &u in &wiring.pair {
                        for &v in &wiring.pair {
                            x += omega.get(wiring.base[r] + v, wiring.base[s] + u);
                        }
                    }
                    let target = if r == s { 1.0 } else { 0.0 };
                    worst = worst.max((x / d_k - target).abs());
                }
            }
        }
        worst
    }
}

/// Nonzero entries `(row, col)` of `V^(k)`, all equal to one.
fn v_k_entries(params: &ProtocolParams) -> Vec<(usize, usize)> {
    let (d, n, k) = (params.dim(), params.sites(), params.teleported());
    let pairs = reference_pairs(params);
    let free = n - 2 * k;
    let mut out = Vec::new();
    for f in 0..d.pow(free as u32) {
        let head = digits(f, d, free);
        for u in 0..d.pow(k as u32) {
            for v in 0..d.pow(k as u32) {
                let mut row = head.clone();
                row.resize(n, 0);
                let mut col = row.clone();
                for (&(a, b), (&x, &y)) in pairs.iter().zip(digits(u, d, k).iter().zip(&digits(v, d, k))) {
                    row[a - 1] = x;
                    row[b - 1] = x;
                    col[a - 1] = y;
                    col[b - 1] = y;
                }
                out.push((index_of(&row, d), index_of(&col, d)));
            }
        }
    }
    out
}

fn big(x: &BigUint) -> f64 {
    x.to_f64().expect("finite")
}
