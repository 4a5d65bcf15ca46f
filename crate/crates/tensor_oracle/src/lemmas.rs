//! Named identities of the commutant algebra, each checked on dense operators
//! at one protocol instance.

use std::collections::HashMap;

use mpbt::{eigenvalue, outer_diagrams, reachable, ProtocolParams};
use nalgebra::DMatrix;
use num_traits::ToPrimitive;
use partitions::{enumerate_diagrams, path_count, YoungDiagram};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symgroup::{all_permutations, prir_index, OrthogonalIrrep, Permutation};

use crate::commutant::{multiplicity, Commutant, FLabel};
use crate::operators::{mpbt_operator, permutation_operator, EBasis};
use crate::suite::CheckResult;
use crate::{DenseOperator, OracleError};

/// Residual bound shared by every identity in this module.
pub const LEMMA_TOLERANCE: f64 = 1e-10;

/// Random permutations drawn for the action checks.
const SAMPLED_PERMUTATIONS: usize = 3;

/// `tr(AB)` without forming the product.
fn trace_product(a: &DenseOperator, b: &DenseOperator) -> f64 {
    a.matrix().component_mul(&b.matrix().transpose()).sum()
}

fn random_operator(d: usize, n: usize, rng: &mut ChaCha8Rng) -> Result<DenseOperator, OracleError> {
    let dim = d.pow(n as u32);
    DenseOperator::from_matrix(DMatrix::from_fn(dim, dim, |_, _| rng.gen_range(-1.0..1.0)), d, n)
}

/// Basis of the ideal at one instance, with every element materialised once.
struct Workspace<'a> {
    c: &'a Commutant,
    params: ProtocolParams,
    max_dim: usize,
    labels: Vec<FLabel>,
    elements: Vec<DenseOperator>,
    index: HashMap<FLabel, usize>,
    bases: HashMap<YoungDiagram, EBasis>,
}

impl<'a> Workspace<'a> {
    fn new(c: &'a Commutant) -> Result<Self, OracleError> {
        let labels = c.labels();
        let elements = labels.iter().map(|l| c.element(l)).collect::<Result<Vec<_>, _>>()?;
        let index = labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        Ok(Self { c, params: *c.params(), max_dim: c.max_dim(), labels, elements, index, bases: HashMap::new() })
    }

    fn d(&self) -> usize {
        self.params.dim()
    }

    fn m(&self, mu: &YoungDiagram) -> f64 {
        multiplicity(mu, self.d())
    }

    fn basis(&mut self, mu: &YoungDiagram) -> Result<&EBasis, OracleError> {
        if !self.bases.contains_key(mu) {
            let b = EBasis::new(mu, self.d(), self.max_dim)?;
            self.bases.insert(mu.clone(), b);
        }
        Ok(&self.bases[mu])
    }

    fn element(&self, label: &FLabel) -> Result<&DenseOperator, OracleError> {
        self.index
            .get(label)
            .map(|&i| &self.elements[i])
            .ok_or_else(|| OracleError::InvalidLabel(format!("{label:?}")))
    }

    fn zeros(&self) -> Result<DenseOperator, OracleError> {
        DenseOperator::zeros(self.d(), self.params.sites(), self.max_dim)
    }

    /// `(1/m_α) tr(X F)`.
    fn coefficient(&self, x: &DenseOperator, at: usize) -> f64 {
        trace_product(x, &self.elements[at]) / self.m(&self.labels[at].alpha)
    }

    fn pairs(&self) -> Vec<(YoungDiagram, YoungDiagram)> {
        outer_diagrams(&self.params)
            .into_iter()
            .flat_map(|alpha| reachable(&self.params, &alpha).into_iter().map(move |mu| (alpha.clone(), mu)))
            .collect()
    }

    fn ports(&self) -> usize {
        self.params.ports()
    }

    fn legs(&self) -> usize {
        self.params.teleported()
    }

    /// Ports `N-k+1..N`, the ones wired to the teleported legs by `V^(k)`.
    fn wired_ports(&self) -> Vec<usize> {
        (self.ports() - self.legs() + 1..=self.ports()).collect()
    }

    fn identity(&self, sites: usize) -> Result<DenseOperator, OracleError> {
        DenseOperator::identity(self.d(), sites, self.max_dim)
    }

    fn port_permutation(&self, tau: &Permutation) -> Result<DenseOperator, OracleError> {
        permutation_operator(&tau.extend(self.params.sites()), self.d(), self.max_dim)
    }
}

/// `V^(k) (X ⊗ 1) V^(k) = (tr_{wired ports} X ⊗ 1) V^(k)` for a random `X` on the ports.
fn partial_transpose_sandwich(w: &Workspace, rng: &mut ChaCha8Rng) -> Result<f64, OracleError> {
    let k = w.legs();
    let x = random_operator(w.d(), w.ports(), rng)?;
    let v = w.c.v();
    let lhs = v.mul(&x.kron(&w.identity(k)?)?)?.mul(v)?;
    let reduced = x.partial_trace(&w.wired_ports())?;
    let rhs = reduced.kron(&w.identity(2 * k)?)?.mul(v)?;
    lhs.distance(&rhs)
}

/// `tr_{last m} E^μ_{(r,i),(r',j)} = δ_{rr'} (m_μ/m_β) E^β_{ij}` for the units on `N` ports,
/// with `r`, `r'` paths down `m` layers.
fn unit_trace(w: &mut Workspace, layers: usize) -> Result<f64, OracleError> {
    let ports = w.ports();
    let traced: Vec<usize> = (ports - layers + 1..=ports).collect();
    let mut worst: f64 = 0.0;
    let c = w.c;
    for ir in c.irreps() {
        let split: Vec<_> = (0..ir.dim()).map(|i| prir_index(&ir.irrep, i, ports - layers)).collect();
        for i in 0..ir.dim() {
            for j in 0..ir.dim() {
                let lhs = ir.on_ports.unit(i, j).partial_trace(&traced)?;
                let (a, b) = (&split[i], &split[j]);
                let rhs = if a.path == b.path {
                    let beta = a.path.last().expect("non-empty path").clone();
                    let c = ir.multiplicity / w.m(&beta);
                    w.basis(&beta)?.unit(a.inner, b.inner).scale(c)
                } else {
                    DenseOperator::zeros(w.d(), ports - layers, w.max_dim)?
                };
                worst = worst.max(lhs.distance(&rhs)?);
            }
        }
    }
    Ok(worst)
}

/// `tr_{wired ports} P_μ = Σ_β m_{μ/β} (m_μ/m_β) P_β`.
fn projector_trace_k_sites(w: &mut Workspace) -> Result<f64, OracleError> {
    let (d, k) = (w.d(), w.legs());
    let traced = w.wired_ports();
    let mut worst: f64 = 0.0;
    let c = w.c;
    for ir in c.irreps() {
        let lhs = ir.on_ports.projector().partial_trace(&traced)?;
        let mut rhs = DenseOperator::zeros(d, w.ports() - k, w.max_dim)?;
        for beta in enumerate_diagrams(w.ports() - k, d) {
            let paths = path_count(&ir.diagram, &beta, d).to_f64().expect("finite");
            if paths == 0.0 {
                continue;
            }
            let c = paths * ir.multiplicity / w.m(&beta);
            rhs = rhs.add(&w.basis(&beta)?.projector().scale(c))?;
        }
        worst = worst.max(lhs.distance(&rhs)?);
    }
    Ok(worst)
}

/// `F^{rs}_{ij} F^{s't}_{j'l} = δ_{ss'} δ_{jj'} F^{rt}_{il}` within one `α`, zero across.
fn composition_rule(w: &Workspace) -> Result<f64, OracleError> {
    let zero = w.zeros()?;
    let mut worst: f64 = 0.0;
    for (a, la) in w.labels.iter().enumerate() {
        for (b, lb) in w.labels.iter().enumerate() {
            let prod = w.elements[a].mul(&w.elements[b])?;
            let linked = la.alpha == lb.alpha && la.nu == lb.mu && la.col_path == lb.row_path && la.j == lb.i;
            let expect = if linked {
                w.element(&FLabel { nu: lb.nu.clone(), col_path: lb.col_path, j: lb.j, ..la.clone() })?
            } else {
                &zero
            };
            worst = worst.max(prod.distance(expect)?);
        }
    }
    Ok(worst)
}

/// Label of the element dual to `label` under `(X, Y) ↦ tr(XY)`.
fn reversed(label: &FLabel) -> FLabel {
    FLabel {
        alpha: label.alpha.clone(),
        mu: label.nu.clone(),
        nu: label.mu.clone(),
        row_path: label.col_path,
        col_path: label.row_path,
        i: label.j,
        j: label.i,
    }
}

/// Compares every coefficient of `x` with `expected`. For `x` inside the ideal
/// it also rebuilds `x` from those coefficients.
fn coefficients_and_expansion(
    w: &Workspace,
    x: &DenseOperator,
    in_ideal: bool,
    expected: impl Fn(&FLabel) -> Result<f64, OracleError>,
) -> Result<f64, OracleError> {
    let mut worst: f64 = 0.0;
    let mut rebuilt = w.zeros()?;
    for (a, label) in w.labels.iter().enumerate() {
        let coeff = w.coefficient(x, a);
        worst = worst.max((coeff - expected(label)?).abs());
        if in_ideal {
            rebuilt = rebuilt.add(&w.element(&reversed(label))?.scale(coeff))?;
        }
    }
    if in_ideal {
        worst = worst.max(rebuilt.distance(x)?);
    }
    Ok(worst)
}

/// Coefficients of `V^(k)`: `√(m_μ m_ν)/m_α` when both indices sit on the label's
/// paths with equal inner index, zero otherwise.
fn v_k_coefficients(w: &Workspace) -> Result<f64, OracleError> {
    coefficients_and_expansion(w, w.c.v(), true, |l| {
        let (a, b) = (w.c.split_index(&l.mu, l.i)?, w.c.split_index(&l.nu, l.j)?);
        let on_paths = a.path == w.c.paths(&l.mu, &l.alpha)[l.row_path]
            && b.path == w.c.paths(&l.nu, &l.alpha)[l.col_path]
            && a.inner == b.inner;
        Ok(if on_paths { (w.m(&l.mu) * w.m(&l.nu)).sqrt() / w.m(&l.alpha) } else { 0.0 })
    })
}

/// Coefficients of `V_τ`, `τ ∈ S(N)`: `δ_{μν} δ_{rs} φ^μ_{ji}(τ)`.
fn permutation_coefficients(w: &Workspace) -> Result<f64, OracleError> {
    let mut worst: f64 = 0.0;
    for tau in all_permutations(w.ports()) {
        let phi: HashMap<&YoungDiagram, DMatrix<f64>> =
            w.c.irreps().iter().map(|ir| Ok((&ir.diagram, ir.irrep.matrix(&tau)?))).collect::<Result<_, OracleError>>()?;
        let x = w.port_permutation(&tau)?;
        let residual = coefficients_and_expansion(w, &x, false, |l| {
            Ok(if l.mu == l.nu && l.row_path == l.col_path { phi[&l.mu][(l.j, l.i)] } else { 0.0 })
        })?;
        worst = worst.max(residual);
    }
    Ok(worst)
}

fn lambda(w: &Workspace, alpha: &YoungDiagram, mu: &YoungDiagram) -> Result<f64, OracleError> {
    Ok(eigenvalue(&w.params, alpha, mu)?.to_f64().expect("finite"))
}

/// Coefficients of ρ: `λ_μ(α) δ_{μν} δ_{rs} δ_{ij}`.
fn rho_coefficients(w: &Workspace, rho: &DenseOperator) -> Result<f64, OracleError> {
    coefficients_and_expansion(w, rho, true, |l| {
        let diagonal = l.mu == l.nu && l.row_path == l.col_path && l.i == l.j;
        Ok(if diagonal { lambda(w, &l.alpha, &l.mu)? } else { 0.0 })
    })
}

struct Projectors {
    entries: Vec<(YoungDiagram, YoungDiagram, DenseOperator)>,
}

fn projectors(w: &Workspace) -> Result<Projectors, OracleError> {
    let entries = w
        .pairs()
        .into_iter()
        .map(|(alpha, mu)| {
            let f = w.c.projector(&mu, &alpha)?;
            Ok((alpha, mu, f))
        })
        .collect::<Result<_, OracleError>>()?;
    Ok(Projectors { entries })
}

/// `ρ = Σ λ_μ(α) F_μ(α)` and `ρ F_μ(α) = λ_μ(α) F_μ(α)`.
fn spectral_decomposition(w: &Workspace, rho: &DenseOperator, fs: &Projectors) -> Result<f64, OracleError> {
    let mut sum = w.zeros()?;
    let mut worst: f64 = 0.0;
    for (alpha, mu, f) in &fs.entries {
        let l = lambda(w, alpha, mu)?;
        sum = sum.add(&f.scale(l))?;
        worst = worst.max(rho.mul(f)?.distance(&f.scale(l))?);
    }
    Ok(worst.max(sum.distance(rho)?))
}

/// The `F_μ(α)` are orthogonal projectors whose sum fixes `V_τ V^(k) V_τ'^{-1}`.
fn projector_algebra(w: &Workspace, fs: &Projectors) -> Result<f64, OracleError> {
    let zero = w.zeros()?;
    let mut worst: f64 = 0.0;
    let mut total = w.zeros()?;
    for (a, (_, _, fa)) in fs.entries.iter().enumerate() {
        total = total.add(fa)?;
        for (b, (_, _, fb)) in fs.entries.iter().enumerate() {
            let expect = if a == b { fa } else { &zero };
            worst = worst.max(fa.mul(fb)?.distance(expect)?);
        }
    }
    let perms: Vec<DenseOperator> =
        all_permutations(w.ports()).iter().map(|t| w.port_permutation(t)).collect::<Result<_, _>>()?;
    for left in &perms {
        let lv = left.mul(w.c.v())?;
        for right in &perms {
            let x = lv.mul(&right.transpose())?;
            worst = worst.max(total.mul(&x)?.distance(&x)?).max(x.mul(&total)?.distance(&x)?);
        }
    }
    Ok(worst)
}

/// `F_μ(α)` from the basis agrees with `P_μ Σ_i P_α(Ā_i) ⊗ d^k P⁺ / (d^N λ_μ(α))`.
fn projector_routes(w: &Workspace, fs: &Projectors) -> Result<f64, OracleError> {
    let mut worst: f64 = 0.0;
    for (alpha, mu, f) in &fs.entries {
        worst = worst.max(w.c.projector_from_range(mu, alpha)?.distance(f)?);
    }
    Ok(worst)
}

/// `tr_{last 2k} V^(k) F_μ(α) = m_{μ/α} (m_μ/m_α) P_α`.
fn v_k_projector_trace(w: &mut Workspace, fs: &Projectors) -> Result<f64, OracleError> {
    let n = w.params.sites();
    let traced: Vec<usize> = (w.ports() - w.legs() + 1..=n).collect();
    let mut worst: f64 = 0.0;
    for (alpha, mu, f) in &fs.entries {
        let lhs = w.c.v().mul(f)?.partial_trace(&traced)?;
        let c = w.c.path_multiplicity(mu, alpha) * w.m(mu) / w.m(alpha);
        let rhs = w.basis(alpha)?.projector().scale(c);
        worst = worst.max(lhs.distance(&rhs)?);
    }
    Ok(worst)
}

/// `tr_{legs} F_μ(α) = m_{μ/α} (m_α/m_μ) P_μ`, the trace taken over the
/// teleported legs `N+1..N+k`.
fn projector_trace_legs(w: &mut Workspace, fs: &Projectors) -> Result<f64, OracleError> {
    let traced: Vec<usize> = (w.ports() + 1..=w.params.sites()).collect();
    let mut worst: f64 = 0.0;
    for (alpha, mu, f) in &fs.entries {
        let lhs = f.partial_trace(&traced)?;
        let c = w.c.path_multiplicity(mu, alpha) * w.m(alpha) / w.m(mu);
        let rhs = w.basis(mu)?.projector().scale(c);
        worst = worst.max(lhs.distance(&rhs)?);
    }
    Ok(worst)
}

/// `tr F_μ(α) = m_{μ/α} m_α d_μ`.
fn projector_traces(w: &Workspace, fs: &Projectors) -> Result<f64, OracleError> {
    let mut worst: f64 = 0.0;
    for (alpha, mu, f) in &fs.entries {
        let d_mu = w.c.irrep(mu)?.dim() as f64;
        let expect = w.c.path_multiplicity(mu, alpha) * w.m(alpha) * d_mu;
        worst = worst.max((f.trace() - expect).abs());
    }
    Ok(worst)
}

/// `V^(k) F_μ(α) = V^(k) P_α P_μ`.
fn v_k_projector_product(w: &mut Workspace, fs: &Projectors) -> Result<f64, OracleError> {
    let k = w.legs();
    let mut worst: f64 = 0.0;
    for (alpha, mu, f) in &fs.entries {
        let lhs = w.c.v().mul(f)?;
        let p_alpha = w.basis(alpha)?.projector().kron(&w.identity(2 * k)?)?;
        let p_mu = w.basis(mu)?.projector().kron(&w.identity(k)?)?;
        let rhs = w.c.v().mul(&p_alpha)?.mul(&p_mu)?;
        worst = worst.max(lhs.distance(&rhs)?);
    }
    Ok(worst)
}

/// Right action of `V^(k)` and two-sided action of `V_τ`, `τ ∈ S(N)`, on the basis:
/// - `F^{rs}_{ij} V^(k) = [j on path s] Σ_{μ' ∈ α, t} (√(m_ν m_μ')/m_α) F^{rt}_{i,(t,l)}`, `l` the inner index of `j`;
/// - `F^{rs}_{ij} V_τ = Σ_l φ^ν_{jl}(τ) F^{rs}_{il}`;
/// - `V_τ F^{rs}_{ij} = Σ_l φ^μ_{li}(τ) F^{rs}_{lj}`.
fn basis_actions(w: &Workspace, rng: &mut ChaCha8Rng) -> Result<f64, OracleError> {
    let mut worst: f64 = 0.0;
    let v = w.c.v();
    for (a, l) in w.labels.iter().enumerate() {
        let lhs = w.elements[a].mul(v)?;
        let split = w.c.split_index(&l.nu, l.j)?;
        let mut rhs = w.zeros()?;
        if split.path == w.c.paths(&l.nu, &l.alpha)[l.col_path] {
            for mu2 in reachable(&w.params, &l.alpha) {
                let c = (w.m(&l.nu) * w.m(&mu2)).sqrt() / w.m(&l.alpha);
                for (t, path) in w.c.paths(&mu2, &l.alpha).iter().enumerate() {
                    let j = w.c.join_index(&mu2, path, split.inner)?;
                    let target = FLabel { nu: mu2.clone(), col_path: t, j, ..l.clone() };
                    rhs = rhs.add(&w.element(&target)?.scale(c))?;
                }
            }
        }
        worst = worst.max(lhs.distance(&rhs)?);
    }

    let mut perms = all_permutations(w.ports());
    perms.shuffle(rng);
    for tau in perms.iter().take(SAMPLED_PERMUTATIONS) {
        let x = w.port_permutation(tau)?;
        let phi: HashMap<YoungDiagram, DMatrix<f64>> = w
            .c
            .irreps()
            .iter()
            .map(|ir| Ok((ir.diagram.clone(), ir.irrep.matrix(tau)?)))
            .collect::<Result<_, OracleError>>()?;
        for (a, l) in w.labels.iter().enumerate() {
            let (fm, fn_) = (&phi[&l.mu], &phi[&l.nu]);
            let mut right = w.zeros()?;
            for m in 0..fn_.nrows() {
                right = right.add(&w.element(&FLabel { j: m, ..l.clone() })?.scale(fn_[(l.j, m)]))?;
            }
            let mut left = w.zeros()?;
            for m in 0..fm.nrows() {
                left = left.add(&w.element(&FLabel { i: m, ..l.clone() })?.scale(fm[(m, l.i)]))?;
            }
            worst = worst.max(w.elements[a].mul(&x)?.distance(&right)?);
            worst = worst.max(x.mul(&w.elements[a])?.distance(&left)?);
        }
    }
    Ok(worst)
}

fn result(name: &str, params: &ProtocolParams, residual: f64) -> CheckResult {
    CheckResult::new(name, Some(*params), residual, LEMMA_TOLERANCE)
}

/// Every named identity at one instance. Random operators and permutations
/// are drawn from a ChaCha stream seeded with `seed`.
pub fn lemma_checks(params: &ProtocolParams, max_dim: usize, seed: u64) -> Result<Vec<CheckResult>, OracleError> {
    let c = Commutant::new(params, max_dim)?;
    let mut w = Workspace::new(&c)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rho = mpbt_operator(params, max_dim)?.from_signals;
    let fs = projectors(&w)?;
    let k = params.teleported();
    Ok(vec![
        result("partial_transpose_sandwich", params, partial_transpose_sandwich(&w, &mut rng)?),
        result("unit_trace_last_site", params, unit_trace(&mut w, 1)?),
        result("unit_trace_k_sites", params, unit_trace(&mut w, k)?),
        result("projector_trace_k_sites", params, projector_trace_k_sites(&mut w)?),
        result("basis_composition_rule", params, composition_rule(&w)?),
        result("v_k_coefficients", params, v_k_coefficients(&w)?),
        result("permutation_coefficients", params, permutation_coefficients(&w)?),
        result("rho_coefficients", params, rho_coefficients(&w, &rho)?),
        result("rho_spectral_decomposition", params, spectral_decomposition(&w, &rho, &fs)?),
        result("eigenprojector_algebra", params, projector_algebra(&w, &fs)?),
        result("eigenprojector_routes", params, projector_routes(&w, &fs)?),
        result("v_k_projector_trace", params, v_k_projector_trace(&mut w, &fs)?),
        result("projector_trace_legs", params, projector_trace_legs(&mut w, &fs)?),
        result("projector_traces", params, projector_traces(&w, &fs)?),
        result("v_k_projector_product", params, v_k_projector_product(&mut w, &fs)?),
        result("basis_actions", params, basis_actions(&w, &mut rng)?),
    ])
}

/// `Σ_τ tr(X φ^α(τ^{-1})) V_τ = (n!/d_α) Σ_{ij} x_{ij} E^α_{ij}` for random `X`,
/// every `α ⊢ n` with at most `d` rows.
pub fn irrep_sum_expansion(n: usize, d: usize, max_dim: usize, seed: u64) -> Result<f64, OracleError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let perms = all_permutations(n);
    let ops: Vec<DenseOperator> = perms.iter().map(|p| permutation_operator(p, d, max_dim)).collect::<Result<_, _>>()?;
    let order = perms.len() as f64;
    let mut worst: f64 = 0.0;
    for alpha in enumerate_diagrams(n, d) {
        let irrep = OrthogonalIrrep::new(&alpha);
        let dim = irrep.dim();
        let x = DMatrix::from_fn(dim, dim, |_, _| rng.gen_range(-1.0..1.0));
        let mut lhs = DenseOperator::zeros(d, n, max_dim)?;
        for (p, op) in perms.iter().zip(&ops) {
            let c = (&x * irrep.matrix(&p.inverse())?).trace();
            lhs = lhs.add(&op.scale(c))?;
        }
        let basis = EBasis::new(&alpha, d, max_dim)?;
        let mut rhs = DenseOperator::zeros(d, n, max_dim)?;
        for i in 0..dim {
            for j in 0..dim {
                rhs = rhs.add(&basis.unit(i, j).scale(x[(i, j)] * order / dim as f64))?;
            }
        }
        worst = worst.max(lhs.distance(&rhs)?);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_MAX_DIM;

    #[test]
    fn all_identities_hold_at_the_smallest_instance() {
        let p = ProtocolParams::new(2, 1, 2).unwrap();
        for r in lemma_checks(&p, DEFAULT_MAX_DIM, 7).unwrap() {
            assert!(r.passed, "{} residual {}", r.name, r.residual);
        }
    }

    #[test]
    fn identities_hold_for_qutrits() {
        let p = ProtocolParams::new(2, 1, 3).unwrap();
        for r in lemma_checks(&p, DEFAULT_MAX_DIM, 11).unwrap() {
            assert!(r.passed, "{} residual {}", r.name, r.residual);
        }
    }

    #[test]
    fn irrep_sums_expand_in_units() {
        assert!(irrep_sum_expansion(3, 2, DEFAULT_MAX_DIM, 1).unwrap() < 1e-10);
        assert!(irrep_sum_expansion(3, 3, DEFAULT_MAX_DIM, 2).unwrap() < 1e-10);
    }
}
