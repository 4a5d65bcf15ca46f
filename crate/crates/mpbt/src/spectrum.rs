use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use partitions::{contains, enumerate_diagrams, irrep_dimension, path_count, sw_multiplicity, YoungDiagram};

use crate::{MpbtError, ProtocolParams};

/// One eigenspace of the teleportation operator, labelled by a diagram
/// `alpha ⊢ N-k` and a diagram `mu ⊢ N` reachable from it by adding `k` boxes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub alpha: YoungDiagram,
    pub mu: YoungDiagram,
    pub eigenvalue: BigRational,
    /// Number of lattice paths from `mu` down to `alpha`.
    pub paths: BigUint,
    /// `paths · m_alpha · d_mu`.
    pub multiplicity: BigUint,
}

pub(crate) fn to_rational(x: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x.clone()))
}

/// Diagrams `alpha ⊢ N-k` with at most `d` rows, in enumeration order.
pub fn outer_diagrams(params: &ProtocolParams) -> Vec<YoungDiagram> {
    enumerate_diagrams(params.ports() - params.teleported(), params.dim())
}

/// Diagrams `mu ⊢ N` with at most `d` rows that contain `alpha`, in enumeration order.
pub fn reachable(params: &ProtocolParams, alpha: &YoungDiagram) -> Vec<YoungDiagram> {
    enumerate_diagrams(params.ports(), params.dim()).into_iter().filter(|mu| contains(mu, alpha)).collect()
}

/// `λ_μ(α) = (k!·C(N,k)/d^N)·(m_μ/m_α)·(d_α/d_μ)`, exactly.
pub fn eigenvalue(params: &ProtocolParams, alpha: &YoungDiagram, mu: &YoungDiagram) -> Result<BigRational, MpbtError> {
    let d = params.dim();
    if alpha.size() + params.teleported() != params.ports() || mu.size() != params.ports() || !contains(mu, alpha) {
        return Err(MpbtError::NotReachable { alpha: alpha.clone(), mu: mu.clone() });
    }
    let (m_mu, m_alpha) = (sw_multiplicity(mu, d), sw_multiplicity(alpha, d));
    if m_mu.is_zero() || m_alpha.is_zero() {
        return Err(MpbtError::TooManyRows { diagram: if m_mu.is_zero() { mu.clone() } else { alpha.clone() }, dim: d });
    }
    let num = params.num_signals() * m_mu * irrep_dimension(alpha);
    let den = BigUint::from(d).pow(params.ports() as u32) * m_alpha * irrep_dimension(mu);
    Ok(BigRational::new(BigInt::from(num), BigInt::from(den)))
}

/// All eigenspaces with nonzero eigenvalue, ordered by `alpha` then `mu`.
pub fn spectrum(params: &ProtocolParams) -> Vec<SpectrumEntry> {
    let d = params.dim();
    let mut out = Vec::new();
    for alpha in outer_diagrams(params) {
        let m_alpha = sw_multiplicity(&alpha, d);
        for mu in reachable(params, &alpha) {
            let paths = path_count(&mu, &alpha, d);
            let eigenvalue = eigenvalue(params, &alpha, &mu).expect("diagrams enumerated within bounds");
            let multiplicity = &paths * &m_alpha * irrep_dimension(&mu);
            out.push(SpectrumEntry { alpha: alpha.clone(), mu, eigenvalue, paths, multiplicity });
        }
    }
    out
}

/// `Σ λ·mult − k!·C(N,k)`; zero when the spectrum accounts for the whole trace.
pub fn trace_residual(params: &ProtocolParams, entries: &[SpectrumEntry]) -> BigRational {
    let total: BigRational = entries.iter().map(|e| &e.eigenvalue * to_rational(&e.multiplicity)).sum();
    total - to_rational(&params.num_signals())
}

/// Rank of the teleportation operator, `Σ mult`.
pub fn rank(entries: &[SpectrumEntry]) -> BigUint {
    entries.iter().map(|e| &e.multiplicity).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn yd(rows: &[usize]) -> YoungDiagram {
        YoungDiagram::new(rows.to_vec()).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn eigenvalue_examples() {
        let p = ProtocolParams::new(2, 1, 2).unwrap();
        assert_eq!(eigenvalue(&p, &yd(&[1]), &yd(&[2])).unwrap(), q(3, 4));
        assert_eq!(eigenvalue(&p, &yd(&[1]), &yd(&[1, 1])).unwrap(), q(1, 4));
        assert!(eigenvalue(&p, &yd(&[1]), &yd(&[3])).is_err());
        let p = ProtocolParams::new(4, 1, 2).unwrap();
        assert!(eigenvalue(&p, &yd(&[1, 1, 1]), &yd(&[2, 1, 1])).is_err());
    }

    #[test]
    fn spectrum_examples() {
        let p = ProtocolParams::new(2, 1, 2).unwrap();
        let s = spectrum(&p);
        let got: Vec<_> = s.iter().map(|e| (e.mu.clone(), e.eigenvalue.clone(), e.multiplicity.clone())).collect();
        assert_eq!(got, vec![(yd(&[2]), q(3, 4), 2u32.into()), (yd(&[1, 1]), q(1, 4), 2u32.into())]);
        assert!(trace_residual(&p, &s).is_zero());

        let p = ProtocolParams::new(4, 2, 2).unwrap();
        let s = spectrum(&p);
        let labels: Vec<_> = s.iter().map(|e| (e.alpha.clone(), e.mu.clone())).collect();
        assert_eq!(
            labels,
            vec![
                (yd(&[2]), yd(&[4])),
                (yd(&[2]), yd(&[3, 1])),
                (yd(&[2]), yd(&[2, 2])),
                (yd(&[1, 1]), yd(&[3, 1])),
                (yd(&[1, 1]), yd(&[2, 2])),
            ]
        );
        assert!(trace_residual(&p, &s).is_zero());
        assert_eq!(s[1].paths, 2u32.into());
    }

    #[test]
    fn trace_identity_on_grid() {
        for d in 2..=4usize {
            for ports in 2..=9 {
                for k in 1..=ports / 2 {
                    let p = ProtocolParams::new(ports, k, d).unwrap();
                    let s = spectrum(&p);
                    assert!(trace_residual(&p, &s).is_zero(), "{ports} {k} {d}");
                    assert!(s.iter().all(|e| e.eigenvalue > BigRational::zero()));
                    assert!(rank(&s) <= p.hilbert_dim());
                }
            }
        }
    }
}
