//! Dense operator basis of the ideal generated by `V^(k)` inside the commutant
//! of `U^{⊗N} ⊗ Ū^{⊗k}`.

use mpbt::{eigenvalue, outer_diagrams, reachable, ProtocolParams};
use num_traits::ToPrimitive;
use partitions::{enumerate_diagrams, path_count, paths_between, sw_multiplicity, LatticePath, YoungDiagram};
use symgroup::{prir_index, prir_position, OrthogonalIrrep, PrirIndex};

use crate::operators::{signal_tuples, v_k_operator, EBasis};
use crate::{DenseOperator, OracleError};

/// Label of a basis element `F^{r s}_{i j}`: `r` is a path from `mu` down to
/// `alpha`, `s` one from `nu` down to `alpha` (as indices into
/// [`Commutant::paths`]), and `i`, `j` are tableau positions in `mu` and `nu`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FLabel {
    pub alpha: YoungDiagram,
    pub mu: YoungDiagram,
    pub nu: YoungDiagram,
    pub row_path: usize,
    pub col_path: usize,
    pub i: usize,
    pub j: usize,
}

/// Irrep data for one `mu ⊢ N`: its orthogonal form and its operator units,
/// both on the `N` ports and extended by the identity to all `N+k` sites.
pub struct PortIrrep {
    pub diagram: YoungDiagram,
    pub irrep: OrthogonalIrrep,
    pub multiplicity: f64,
    pub on_ports: EBasis,
    units: Vec<DenseOperator>,
}

impl PortIrrep {
    pub fn dim(&self) -> usize {
        self.on_ports.irrep_dim()
    }

    /// `E^μ_{ij} ⊗ 1` on all sites.
    pub fn unit(&self, i: usize, j: usize) -> &DenseOperator {
        &self.units[i * self.dim() + j]
    }
}

pub struct Commutant {
    params: ProtocolParams,
    max_dim: usize,
    irreps: Vec<PortIrrep>,
    v: DenseOperator,
}

pub fn multiplicity(mu: &YoungDiagram, d: usize) -> f64 {
    sw_multiplicity(mu, d).to_f64().expect("finite")
}

impl Commutant {
    pub fn new(params: &ProtocolParams, max_dim: usize) -> Result<Self, OracleError> {
        let (d, k) = (params.dim(), params.teleported());
        let legs = DenseOperator::identity(d, k, max_dim)?;
        let mut irreps = Vec::new();
        for mu in enumerate_diagrams(params.ports(), d) {
            let on_ports = EBasis::new(&mu, d, max_dim)?;
            let dm = on_ports.irrep_dim();
            let mut units = Vec::with_capacity(dm * dm);
            for i in 0..dm {
                for j in 0..dm {
                    units.push(on_ports.unit(i, j).kron(&legs)?);
                }
            }
            irreps.push(PortIrrep {
                irrep: OrthogonalIrrep::new(&mu),
                multiplicity: multiplicity(&mu, d),
                diagram: mu,
                on_ports,
                units,
            });
        }
        Ok(Self { params: *params, max_dim, irreps, v: v_k_operator(params, max_dim)? })
    }

    pub fn params(&self) -> &ProtocolParams {
        &self.params
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn v(&self) -> &DenseOperator {
        &self.v
    }

    pub fn irreps(&self) -> &[PortIrrep] {
        &self.irreps
    }

    pub fn irrep(&self, mu: &YoungDiagram) -> Result<&PortIrrep, OracleError> {
        self.irreps
            .iter()
            .find(|p| p.diagram == *mu)
            .ok_or_else(|| OracleError::InvalidLabel(format!("{mu} is not an irrep on {} ports", self.params.ports())))
    }

    /// Lattice paths from `mu` down to `alpha`, in restriction-block order.
    pub fn paths(&self, mu: &YoungDiagram, alpha: &YoungDiagram) -> Vec<LatticePath> {
        paths_between(mu, alpha)
    }

    /// Splits tableau position `i` of `mu` into (path down to layer `N-k`, inner index).
    pub fn split_index(&self, mu: &YoungDiagram, i: usize) -> Result<PrirIndex, OracleError> {
        let ir = self.irrep(mu)?;
        if i >= ir.dim() {
            return Err(OracleError::InvalidLabel(format!("index {i} outside {mu}")));
        }
        Ok(prir_index(&ir.irrep, i, self.params.ports() - self.params.teleported()))
    }

    /// Tableau position of `(path, inner)`.
    pub fn join_index(&self, mu: &YoungDiagram, path: &LatticePath, inner: usize) -> Result<usize, OracleError> {
        let ir = self.irrep(mu)?;
        prir_position(&ir.irrep, &PrirIndex { path: path.clone(), inner })
            .ok_or_else(|| OracleError::InvalidLabel(format!("no position for {path:?}/{inner} in {mu}")))
    }

    /// Every basis label, grouped by `alpha`, then `mu`, `nu`, paths and indices.
    pub fn labels(&self) -> Vec<FLabel> {
        let mut out = Vec::new();
        for alpha in outer_diagrams(&self.params) {
            let mus = reachable(&self.params, &alpha);
            for mu in &mus {
                for nu in &mus {
                    let (dm, dn) = (self.irrep(mu).unwrap().dim(), self.irrep(nu).unwrap().dim());
                    for row_path in 0..self.paths(mu, &alpha).len() {
                        for col_path in 0..self.paths(nu, &alpha).len() {
                            for i in 0..dm {
                                for j in 0..dn {
                                    out.push(FLabel {
                                        alpha: alpha.clone(),
                                        mu: mu.clone(),
                                        nu: nu.clone(),
                                        row_path,
                                        col_path,
                                        i,
                                        j,
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    fn anchor(&self, mu: &YoungDiagram, alpha: &YoungDiagram, path: usize) -> Result<usize, OracleError> {
        let paths = self.paths(mu, alpha);
        let p = paths.get(path).ok_or_else(|| OracleError::InvalidLabel(format!("path {path} from {mu} to {alpha}")))?;
        self.join_index(mu, p, 0)
    }

    /// `F^{r s}_{i j} = (m_α/√(m_μ m_ν)) E^μ_{i,(r,1)} V^(k) E^ν_{(s,1),j}`.
    pub fn element(&self, label: &FLabel) -> Result<DenseOperator, OracleError> {
        let (a, b) = (self.irrep(&label.mu)?, self.irrep(&label.nu)?);
        if label.i >= a.dim() || label.j >= b.dim() {
            return Err(OracleError::InvalidLabel(format!("{label:?}")));
        }
        let ra = self.anchor(&label.mu, &label.alpha, label.row_path)?;
        let rb = self.anchor(&label.nu, &label.alpha, label.col_path)?;
        let m_alpha = multiplicity(&label.alpha, self.params.dim());
        let c = m_alpha / (a.multiplicity * b.multiplicity).sqrt();
        Ok(a.unit(label.i, ra).mul(&self.v)?.mul(b.unit(rb, label.j))?.scale(c))
    }

    /// `(1/m_α) tr(X F)`, the matrix element of `X` at `label`.
    pub fn matrix_element(&self, x: &DenseOperator, label: &FLabel) -> Result<f64, OracleError> {
        let m_alpha = multiplicity(&label.alpha, self.params.dim());
        Ok(x.mul(&self.element(label)?)?.trace() / m_alpha)
    }

    /// `F_μ(α) = Σ_{r,i} F^{rr}_{ii}`.
    pub fn projector(&self, mu: &YoungDiagram, alpha: &YoungDiagram) -> Result<DenseOperator, OracleError> {
        let paths = self.paths(mu, alpha).len();
        if paths == 0 {
            return Err(OracleError::InvalidLabel(format!("{mu} does not contain {alpha}")));
        }
        let dm = self.irrep(mu)?.dim();
        let (d, n) = (self.params.dim(), self.params.sites());
        let mut out = DenseOperator::zeros(d, n, self.max_dim)?;
        for r in 0..paths {
            for i in 0..dm {
                let label =
                    FLabel { alpha: alpha.clone(), mu: mu.clone(), nu: mu.clone(), row_path: r, col_path: r, i, j: i };
                out = out.add(&self.element(&label)?)?;
            }
        }
        Ok(out)
    }

    /// `Σ_i P_α(Ā_i) ⊗ d^k P⁺(A_i, C)`, with `P_α` on the ports outside the outcome.
    pub fn outcome_sum(&self, p_alpha: &DenseOperator) -> Result<DenseOperator, OracleError> {
        let (d, n, ports) = (self.params.dim(), self.params.sites(), self.params.ports());
        let mut out = DenseOperator::zeros(d, n, self.max_dim)?;
        for tuple in signal_tuples(&self.params) {
            let rest: Vec<usize> = (1..=ports).filter(|s| !tuple.contains(s)).collect();
            let pairs = crate::operators::signal_pairs(&tuple, &self.params);
            let wired = crate::operators::paired_operator(d, n, &pairs, 1.0, self.max_dim)?;
            out = out.add(&p_alpha.embed(&rest, n, self.max_dim)?.mul(&wired)?)?;
        }
        Ok(out)
    }

    /// `F_μ(α)` as `P_μ Σ_i P_α(Ā_i) ⊗ d^k P⁺ / (d^N λ_μ(α))`.
    pub fn projector_from_range(&self, mu: &YoungDiagram, alpha: &YoungDiagram) -> Result<DenseOperator, OracleError> {
        let lambda = eigenvalue(&self.params, alpha, mu)?.to_f64().expect("finite");
        let d = self.params.dim();
        let p_alpha = crate::operators::young_projector(alpha, d, self.max_dim)?;
        let p_mu = self.irrep(mu)?;
        let mut p = p_mu.unit(0, 0).clone();
        for i in 1..p_mu.dim() {
            p = p.add(p_mu.unit(i, i))?;
        }
        let scale = 1.0 / ((d as f64).powi(self.params.ports() as i32) * lambda);
        Ok(p.mul(&self.outcome_sum(&p_alpha)?)?.scale(scale))
    }

    /// `m_{μ/α}` on the lattice truncated to `d` rows.
    pub fn path_multiplicity(&self, mu: &YoungDiagram, alpha: &YoungDiagram) -> f64 {
        path_count(mu, alpha, self.params.dim()).to_f64().expect("finite")
    }
}
