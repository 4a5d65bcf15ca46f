//! Dense constructions straight from the definitions.

use mpbt::ProtocolParams;
use nalgebra::DMatrix;
use num_traits::ToPrimitive;
use partitions::{irrep_dimension, YoungDiagram};
use symgroup::{all_permutations, coset_transversal, OrthogonalIrrep, Permutation};

use crate::dense::{digits, index_of, require_dim};
use crate::{DenseOperator, OracleError};

/// Largest number of sites for which sums over all of `S(n)` are attempted.
pub const MAX_GROUP_SUM_SITES: usize = 8;

pub(crate) fn guard_group_sum(n: usize) -> Result<(), OracleError> {
    if n > MAX_GROUP_SUM_SITES {
        return Err(OracleError::GroupSumGuard { sites: n, max: MAX_GROUP_SUM_SITES });
    }
    Ok(())
}

/// Basis index after moving the content of site `j` to site `p(j)`.
pub(crate) fn permute_index(p: &Permutation, x: &[usize], d: usize) -> usize {
    let mut y = vec![0; x.len()];
    for (j, &v) in x.iter().enumerate() {
        y[p.apply(j + 1) - 1] = v;
    }
    index_of(&y, d)
}

/// `V_p |x_1 … x_n⟩ = |x_{p⁻¹(1)} … x_{p⁻¹(n)}⟩`, so that `V_p V_q = V_{p∘q}`.
pub fn permutation_operator(p: &Permutation, d: usize, max_dim: usize) -> Result<DenseOperator, OracleError> {
    let n = p.degree();
    let dim = require_dim(d, n, max_dim)?;
    let mut m = DMatrix::zeros(dim, dim);
    for x in 0..dim {
        m[(permute_index(p, &digits(x, d, n), d), x)] = 1.0;
    }
    DenseOperator::from_matrix(m, d, n)
}

/// Site pairs `(n-2k+j, n-j+1)`, `j = 1..k`, joined by the partially transposed swaps.
pub fn reference_pairs(params: &ProtocolParams) -> Vec<(usize, usize)> {
    let (n, k) = (params.sites(), params.teleported());
    (1..=k).map(|j| (n - 2 * k + j, n - j + 1)).collect()
}

/// `V^(k)`: the product of partially transposed swaps over the reference pairs,
/// each transposed on its later site.
pub fn v_k_operator(params: &ProtocolParams, max_dim: usize) -> Result<DenseOperator, OracleError> {
    let (d, n) = (params.dim(), params.sites());
    let mut out = DenseOperator::identity(d, n, max_dim)?;
    for (a, b) in reference_pairs(params) {
        let swap = permutation_operator(&Permutation::transposition(n, a, b), d, max_dim)?;
        out = out.mul(&swap.partial_transpose(&[b])?)?;
    }
    Ok(out)
}

/// `scale · Σ |u u⟩⟨v v|` on each listed pair, identity elsewhere.
pub(crate) fn paired_operator(
    d: usize,
    n: usize,
    pairs: &[(usize, usize)],
    scale: f64,
    max_dim: usize,
) -> Result<DenseOperator, OracleError> {
    let dim = require_dim(d, n, max_dim)?;
    let mut m = DMatrix::zeros(dim, dim);
    for x in 0..dim {
        let dx = digits(x, d, n);
        if pairs.iter().any(|&(a, b)| dx[a - 1] != dx[b - 1]) {
            continue;
        }
        let mut targets = vec![dx.clone()];
        for &(a, b) in pairs {
            targets = targets
                .into_iter()
                .flat_map(|t| {
                    (0..d).map(move |v| {
                        let mut t = t.clone();
                        t[a - 1] = v;
                        t[b - 1] = v;
                        t
                    })
                })
                .collect();
        }
        for t in targets {
            m[(x, index_of(&t, d))] += scale;
        }
    }
    DenseOperator::from_matrix(m, d, n)
}

/// Every outcome tuple `(i_1..i_k)` of distinct ports in `1..N`, lexicographically.
pub fn signal_tuples(params: &ProtocolParams) -> Vec<Vec<usize>> {
    fn rec(ports: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for p in 1..=ports {
            if !cur.contains(&p) {
                cur.push(p);
                rec(ports, k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(params.ports(), params.teleported(), &mut Vec::new(), &mut out);
    out
}

/// The outcome whose signal is `V^(k)/d^N`: ports `N-k+1..N`.
pub fn reference_tuple(params: &ProtocolParams) -> Vec<usize> {
    ((params.ports() - params.teleported() + 1)..=params.ports()).collect()
}

pub(crate) fn validate_tuple(tuple: &[usize], params: &ProtocolParams) -> Result<(), OracleError> {
    let ok = tuple.len() == params.teleported()
        && tuple.iter().all(|&p| p >= 1 && p <= params.ports())
        && (0..tuple.len()).all(|a| (a + 1..tuple.len()).all(|b| tuple[a] != tuple[b]));
    if ok {
        Ok(())
    } else {
        Err(OracleError::InvalidTuple(tuple.to_vec()))
    }
}

/// `d^{-N}`, the weight of every nonzero entry of a signal.
pub fn signal_weight(params: &ProtocolParams) -> f64 {
    1.0 / (params.dim() as f64).powi(params.ports() as i32)
}

/// Pairs `(i_j, n-j+1)` wiring port `i_j` to the `j`-th teleported leg.
pub fn signal_pairs(tuple: &[usize], params: &ProtocolParams) -> Vec<(usize, usize)> {
    let n = params.sites();
    tuple.iter().enumerate().map(|(j, &a)| (a, n - j)).collect()
}

/// `σ_i = d^{-(N-k)} 1 ⊗ P⁺` on the pairs `(i_j, n-j+1)`, with `P⁺` the normalised
/// maximally entangled projector.
pub fn signal_state(tuple: &[usize], params: &ProtocolParams, max_dim: usize) -> Result<DenseOperator, OracleError> {
    validate_tuple(tuple, params)?;
    paired_operator(params.dim(), params.sites(), &signal_pairs(tuple, params), signal_weight(params), max_dim)
}

/// The teleportation operator built twice: as the sum of all signals and as
/// `d^{-N} Σ_τ V_τ⁻¹ V^(k) V_τ` over coset representatives of `S(N)/S(N-k)`.
#[derive(Debug, Clone)]
pub struct MpbtOperator {
    pub from_signals: DenseOperator,
    pub from_cosets: DenseOperator,
}

impl MpbtOperator {
    pub fn route_residual(&self) -> f64 {
        self.from_signals.distance(&self.from_cosets).expect("same space")
    }
}

pub fn mpbt_operator(params: &ProtocolParams, max_dim: usize) -> Result<MpbtOperator, OracleError> {
    let (d, n) = (params.dim(), params.sites());
    let mut from_signals = DenseOperator::zeros(d, n, max_dim)?;
    for t in signal_tuples(params) {
        from_signals = from_signals.add(&signal_state(&t, params, max_dim)?)?;
    }
    let v = v_k_operator(params, max_dim)?;
    let mut from_cosets = DenseOperator::zeros(d, n, max_dim)?;
    for tau in coset_transversal(params.ports(), params.ports() - params.teleported()) {
        let vt = permutation_operator(&tau.extend(n), d, max_dim)?;
        from_cosets = from_cosets.add(&vt.transpose().mul(&v)?.mul(&vt)?)?;
    }
    let from_cosets = from_cosets.scale(signal_weight(params));
    Ok(MpbtOperator { from_signals, from_cosets })
}

/// All operator units `E^μ_{ij} = (d_μ/n!) Σ_τ φ^μ_{ji}(τ⁻¹) V_τ` of one irrep
/// on `n` sites, indexed by tableau positions.
#[derive(Debug, Clone)]
pub struct EBasis {
    diagram: YoungDiagram,
    irrep_dim: usize,
    units: Vec<DenseOperator>,
}

impl EBasis {
    pub fn new(mu: &YoungDiagram, d: usize, max_dim: usize) -> Result<Self, OracleError> {
        let n = mu.size();
        guard_group_sum(n)?;
        let dim = require_dim(d, n, max_dim)?;
        let irrep = OrthogonalIrrep::new(mu);
        let dm = irrep.dim();
        let perms = all_permutations(n);
        let scale = dm as f64 / perms.len() as f64;
        let all_digits: Vec<Vec<usize>> = (0..dim).map(|x| digits(x, d, n)).collect();
        let mut mats = vec![DMatrix::<f64>::zeros(dim, dim); dm * dm];
        for tau in &perms {
            let phi = irrep.matrix(&tau.inverse())?;
            let image: Vec<usize> = all_digits.iter().map(|x| permute_index(tau, x, d)).collect();
            for i in 0..dm {
                for j in 0..dm {
                    let c = scale * phi[(j, i)];
                    if c != 0.0 {
                        let m = &mut mats[i * dm + j];
                        for (x, &y) in image.iter().enumerate() {
                            m[(y, x)] += c;
                        }
                    }
                }
            }
        }
        let units = mats.into_iter().map(|m| DenseOperator::from_matrix(m, d, n)).collect::<Result<_, _>>()?;
        Ok(Self { diagram: mu.clone(), irrep_dim: dm, units })
    }

    pub fn diagram(&self) -> &YoungDiagram {
        &self.diagram
    }

    pub fn irrep_dim(&self) -> usize {
        self.irrep_dim
    }

    pub fn unit(&self, i: usize, j: usize) -> &DenseOperator {
        &self.units[i * self.irrep_dim + j]
    }

    /// `Σ_i E_ii`.
    pub fn projector(&self) -> DenseOperator {
        let mut p = self.unit(0, 0).clone();
        for i in 1..self.irrep_dim {
            p = p.add(self.unit(i, i)).expect("same space");
        }
        p
    }
}

/// `E^μ_{ij}` on `n_sites = |μ|` sites; `i`, `j` are zero-based tableau positions.
pub fn e_operator(mu: &YoungDiagram, i: usize, j: usize, d: usize, max_dim: usize) -> Result<DenseOperator, OracleError> {
    let dm = irrep_dimension(mu).to_usize().unwrap_or(usize::MAX);
    if i >= dm || j >= dm {
        return Err(OracleError::InvalidLabel(format!("index ({i}, {j}) outside irrep {mu} of dimension {dm}")));
    }
    Ok(EBasis::new(mu, d, max_dim)?.unit(i, j).clone())
}

/// Young projector `(d_μ/n!) Σ_τ χ^μ(τ) V_τ` on `|μ|` sites.
pub fn young_projector(mu: &YoungDiagram, d: usize, max_dim: usize) -> Result<DenseOperator, OracleError> {
    let n = mu.size();
    guard_group_sum(n)?;
    let dim = require_dim(d, n, max_dim)?;
    let irrep = OrthogonalIrrep::new(mu);
    let perms = all_permutations(n);
    let scale = irrep.dim() as f64 / perms.len() as f64;
    let mut m = DMatrix::zeros(dim, dim);
    let all_digits: Vec<Vec<usize>> = (0..dim).map(|x| digits(x, d, n)).collect();
    for tau in &perms {
        let c = scale * irrep.character(tau)?;
        if c != 0.0 {
            for (x, dx) in all_digits.iter().enumerate() {
                m[(permute_index(tau, dx, d), x)] += c;
            }
        }
    }
    DenseOperator::from_matrix(m, d, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use partitions::enumerate_diagrams;

    const CAP: usize = 4096;

    fn yd(rows: &[usize]) -> YoungDiagram {
        YoungDiagram::new(rows.to_vec()).unwrap()
    }

    #[test]
    fn permutation_operator_examples() {
        assert_eq!(
            permutation_operator(&Permutation::identity(3), 2, CAP).unwrap(),
            DenseOperator::identity(2, 3, CAP).unwrap()
        );
        let s = permutation_operator(&Permutation::transposition(2, 1, 2), 2, CAP).unwrap();
        let mut swap = DMatrix::zeros(4, 4);
        for (a, b) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
            swap[(a, b)] = 1.0;
        }
        assert_eq!(s.matrix(), &swap);
        let p = Permutation::transposition(3, 1, 2);
        let q = Permutation::transposition(3, 2, 3);
        let lhs = permutation_operator(&p, 2, CAP).unwrap().mul(&permutation_operator(&q, 2, CAP).unwrap()).unwrap();
        assert_eq!(lhs, permutation_operator(&p.compose(&q).unwrap(), 2, CAP).unwrap());
        assert!(permutation_operator(&Permutation::identity(13), 2, CAP).is_err());
    }

    #[test]
    fn v_k_examples() {
        let p = ProtocolParams::new(2, 1, 2).unwrap();
        let v = v_k_operator(&p, CAP).unwrap();
        let expect = paired_operator(2, 3, &[(2, 3)], 1.0, CAP).unwrap();
        assert_eq!(v, expect);
        assert!(v.mul(&v).unwrap().distance(&v.scale(2.0)).unwrap() < 1e-15);
        let p = ProtocolParams::new(4, 2, 2).unwrap();
        let v = v_k_operator(&p, CAP).unwrap();
        assert_eq!(v, paired_operator(2, 6, &[(3, 6), (4, 5)], 1.0, CAP).unwrap());
        assert_eq!(v.trace(), 16.0);
    }

    #[test]
    fn signal_examples() {
        let p = ProtocolParams::new(3, 1, 2).unwrap();
        for t in signal_tuples(&p) {
            let s = signal_state(&t, &p, CAP).unwrap();
            assert!((s.trace() - 1.0).abs() < 1e-15);
            assert!(s.eigen_range().0 > -1e-12);
        }
        let p = ProtocolParams::new(4, 2, 2).unwrap();
        let s0 = signal_state(&reference_tuple(&p), &p, CAP).unwrap();
        assert_eq!(s0, v_k_operator(&p, CAP).unwrap().scale(signal_weight(&p)));
        let p = ProtocolParams::new(3, 1, 3).unwrap();
        let s0 = signal_state(&reference_tuple(&p), &p, CAP).unwrap();
        assert_eq!(s0, v_k_operator(&p, CAP).unwrap().scale(signal_weight(&p)));
        assert_eq!(signal_tuples(&ProtocolParams::new(4, 2, 2).unwrap()).len(), 12);
        assert!(signal_state(&[1, 1], &p, CAP).is_err());
        assert!(signal_state(&[1, 5], &p, CAP).is_err());
    }

    #[test]
    fn signal_covariance() {
        let p = ProtocolParams::new(3, 1, 2).unwrap();
        let tau = Permutation::from_one_line(&[3, 1, 2]).unwrap();
        let vt = permutation_operator(&tau.extend(4), 2, CAP).unwrap();
        for t in signal_tuples(&p) {
            let s = signal_state(&t, &p, CAP).unwrap();
            let moved: Vec<usize> = t.iter().map(|&a| tau.apply(a)).collect();
            let lhs = vt.mul(&s).unwrap().mul(&vt.transpose()).unwrap();
            assert!(lhs.distance(&signal_state(&moved, &p, CAP).unwrap()).unwrap() < 1e-15);
        }
    }

    #[test]
    fn mpbt_operator_routes_agree() {
        for (ports, k, d) in [(2, 1, 2), (3, 1, 2), (4, 2, 2), (2, 1, 3)] {
            let p = ProtocolParams::new(ports, k, d).unwrap();
            let rho = mpbt_operator(&p, CAP).unwrap();
            assert!(rho.route_residual() < 1e-12);
            let expect = p.num_signals().to_f64().unwrap();
            assert!((rho.from_signals.trace() - expect).abs() < 1e-10);
        }
        let p = ProtocolParams::new(2, 1, 2).unwrap();
        let mut ev: Vec<f64> = mpbt_operator(&p, CAP).unwrap().from_signals.matrix().symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(|a, b| a.total_cmp(b));
        let expect = [0.0, 0.0, 0.0, 0.0, 0.25, 0.25, 0.75, 0.75];
        assert!(ev.iter().zip(expect).all(|(a, b)| (a - b).abs() < 1e-12));
    }

    #[test]
    fn e_operator_algebra() {
        let d = 2;
        let bases: Vec<EBasis> = enumerate_diagrams(3, 3).iter().map(|mu| EBasis::new(mu, d, CAP).unwrap()).collect();
        let mut total = DenseOperator::zeros(d, 3, CAP).unwrap();
        for (a, ea) in bases.iter().enumerate() {
            total = total.add(&ea.projector()).unwrap();
            for (b, eb) in bases.iter().enumerate() {
                for i in 0..ea.irrep_dim() {
                    for j in 0..ea.irrep_dim() {
                        for k in 0..eb.irrep_dim() {
                            for l in 0..eb.irrep_dim() {
                                let prod = ea.unit(i, j).mul(eb.unit(k, l)).unwrap();
                                let expect = if a == b && j == k {
                                    ea.unit(i, l).clone()
                                } else {
                                    DenseOperator::zeros(d, 3, CAP).unwrap()
                                };
                                assert!(prod.distance(&expect).unwrap() < 1e-12);
                            }
                        }
                    }
                }
            }
        }
        assert!(total.distance(&DenseOperator::identity(d, 3, CAP).unwrap()).unwrap() < 1e-12);
        assert!((e_operator(&yd(&[2, 1]), 0, 0, 2, CAP).unwrap().trace() - 2.0).abs() < 1e-12);
        assert!(e_operator(&yd(&[2, 1]), 2, 0, 2, CAP).is_err());
    }

    #[test]
    fn young_projector_examples() {
        let p21 = young_projector(&yd(&[2, 1]), 2, CAP).unwrap();
        assert!((p21.trace() - 4.0).abs() < 1e-12);
        assert!(p21.mul(&p21).unwrap().distance(&p21).unwrap() < 1e-12);
        assert!(young_projector(&yd(&[1, 1, 1]), 2, CAP).unwrap().matrix().amax() < 1e-15);
        let via_units = EBasis::new(&yd(&[2, 1]), 2, CAP).unwrap().projector();
        assert!(via_units.distance(&p21).unwrap() < 1e-12);
        assert!(young_projector(&YoungDiagram::row(9), 2, 1 << 20).is_err());
    }
}
