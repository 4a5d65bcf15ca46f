use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use partitions::{contains, enumerate_diagrams, irrep_dimension, path_count, sw_multiplicity, YoungDiagram};

use crate::spectrum::{outer_diagrams, reachable, to_rational};
use crate::{eigenvalue, spectrum, MpbtError, ProtocolParams, SpectrumEntry};

/// Contribution of one `alpha ⊢ N-k` to the entanglement fidelity.
#[derive(Debug, Clone, PartialEq)]
pub struct FidelityTerm {
    pub alpha: YoungDiagram,
    pub value: f64,
}

fn big_to_f64(x: &BigUint) -> f64 {
    x.to_f64().expect("finite for desk-scale parameters")
}

/// Per-`alpha` terms of `(1/d^(N+2k)) Σ_α (Σ_μ m_{μ/α} √(m_μ d_μ))²`. The
/// square is expanded into cross terms that are summed from largest to
/// smallest.
fn fidelity_terms_raw(ports: usize, k: usize, d: usize) -> Vec<FidelityTerm> {
    let scale = (d as f64).powi((ports + 2 * k) as i32);
    let mut out = Vec::new();
    for alpha in enumerate_diagrams(ports - k, d) {
        let weights: Vec<(f64, f64)> = enumerate_diagrams(ports, d)
            .into_iter()
            .filter(|mu| contains(mu, &alpha))
            .map(|mu| {
                let paths = big_to_f64(&path_count(&mu, &alpha, d));
                (paths, big_to_f64(&(sw_multiplicity(&mu, d) * irrep_dimension(&mu))).sqrt())
            })
            .collect();
        let mut cross: Vec<f64> = Vec::with_capacity(weights.len() * weights.len());
        for &(pa, ra) in &weights {
            for &(pb, rb) in &weights {
                cross.push(pa * pb * ra * rb);
            }
        }
        cross.sort_by(|a, b| b.total_cmp(a));
        let value = cross.iter().sum::<f64>() / scale;
        out.push(FidelityTerm { alpha, value });
    }
    out
}

/// Per-`alpha` breakdown of [`fidelity`].
pub fn fidelity_terms(params: &ProtocolParams) -> Vec<FidelityTerm> {
    fidelity_terms_raw(params.ports(), params.teleported(), params.dim())
}

/// Entanglement fidelity of the deterministic protocol with square-root measurements.
pub fn fidelity(params: &ProtocolParams) -> f64 {
    sum_descending(fidelity_terms(params).into_iter().map(|t| t.value))
}

/// The fidelity expression evaluated without the `k ≤ ⌊N/2⌋` constraint.
/// Requires `1 ≤ k ≤ ports` and `d ≥ 1`.
pub fn fidelity_formula(ports: usize, k: usize, d: usize) -> f64 {
    assert!(k >= 1 && k <= ports && d >= 1, "fidelity formula needs 1 ≤ k ≤ N");
    sum_descending(fidelity_terms_raw(ports, k, d).into_iter().map(|t| t.value))
}

/// Fidelity of ordinary port-based teleportation with `ports` ports of local
/// dimension `d`: `(1/d^(N+2)) Σ_α (Σ_{μ = α + □} √(m_μ d_μ))²`.
pub fn pbt_fidelity(ports: usize, d: usize) -> f64 {
    let scale = (d as f64).powi(ports as i32 + 2);
    let terms = enumerate_diagrams(ports - 1, d).into_iter().map(|alpha| {
        let s: f64 = partitions::add_box(&alpha, Some(d))
            .iter()
            .map(|mu| big_to_f64(&(sw_multiplicity(mu, d) * irrep_dimension(mu))).sqrt())
            .sum();
        s * s / scale
    });
    sum_descending(terms)
}

fn sum_descending(values: impl Iterator<Item = f64>) -> f64 {
    let mut v: Vec<f64> = values.collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v.iter().sum()
}

/// The outcome `mu*` chosen for one `alpha` by the optimal probabilistic measurement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimalChoice {
    pub alpha: YoungDiagram,
    pub mu: YoungDiagram,
    /// `m_α d_α / λ_{μ*}(α)`, the minimum over `mu`.
    pub ratio: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuccessProbability {
    pub value: BigRational,
    pub optimal: Vec<OptimalChoice>,
}

/// Index of the largest eigenvalue, the first one on ties. Minimising
/// `m_α d_α / λ` over `mu` is the same as maximising `λ`.
pub fn optimal_outcome(eigenvalues: &[BigRational]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, l) in eigenvalues.iter().enumerate() {
        if best.is_none_or(|b| *l > eigenvalues[b]) {
            best = Some(i);
        }
    }
    best
}

/// Average success probability of the probabilistic protocol,
/// `(k!·C(N,k)/d^(2N)) Σ_α min_μ m_α d_α / λ_μ(α)`, exactly.
pub fn success_probability(params: &ProtocolParams) -> SuccessProbability {
    let d = params.dim();
    let mut total = BigRational::zero();
    let mut optimal = Vec::new();
    for alpha in outer_diagrams(params) {
        let mus = reachable(params, &alpha);
        let lambdas: Vec<BigRational> =
            mus.iter().map(|mu| eigenvalue(params, &alpha, mu).expect("enumerated within bounds")).collect();
        let best = optimal_outcome(&lambdas).expect("every alpha reaches some mu");
        let weight = to_rational(&(sw_multiplicity(&alpha, d) * irrep_dimension(&alpha)));
        let ratio = weight / &lambdas[best];
        total += &ratio;
        optimal.push(OptimalChoice { alpha, mu: mus[best].clone(), ratio });
    }
    let scale = BigRational::new(
        BigInt::from(params.num_signals()),
        BigInt::from(BigUint::from(d).pow(2 * params.ports() as u32)),
    );
    SuccessProbability { value: total * scale, optimal }
}

/// Multi-port teleportation against ordinary port-based teleportation with a
/// single port of dimension `d^k`, both with maximally entangled resources.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub params: ProtocolParams,
    pub fidelity_mpbt: f64,
    pub fidelity_pbt_bigport: f64,
    pub probability_mpbt: BigRational,
    pub probability_pbt_bigport: BigRational,
}

pub fn compare_protocols(ports: usize, k: usize, d: usize) -> Result<Comparison, MpbtError> {
    let params = ProtocolParams::new(ports, k, d)?;
    let big = ProtocolParams::new(ports, 1, d.pow(k as u32))?;
    Ok(Comparison {
        params,
        fidelity_mpbt: fidelity(&params),
        fidelity_pbt_bigport: fidelity(&big),
        probability_mpbt: success_probability(&params).value,
        probability_pbt_bigport: success_probability(&big).value,
    })
}

/// Everything the closed forms say about one protocol instance.
#[derive(Debug, Clone, PartialEq)]
pub struct PerformanceReport {
    pub params: ProtocolParams,
    pub fidelity: f64,
    pub probability: SuccessProbability,
    pub spectrum: Vec<SpectrumEntry>,
}

pub fn report(params: &ProtocolParams) -> PerformanceReport {
    PerformanceReport {
        params: *params,
        fidelity: fidelity(params),
        probability: success_probability(params),
        spectrum: spectrum(params),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn fidelity_anchor() {
        let p = ProtocolParams::new(2, 1, 2).unwrap();
        let expect = (4.0 + 2.0 * 3f64.sqrt()) / 16.0;
        assert!((fidelity(&p) - expect).abs() < 1e-15);
        assert_eq!(fidelity_terms(&p).len(), 1);
    }

    #[test]
    fn single_port_formula() {
        for d in 2..=6 {
            assert!((fidelity_formula(1, 1, d) - 1.0 / (d * d) as f64).abs() < 1e-15);
        }
    }

    #[test]
    fn k1_matches_pbt() {
        for d in 2..=5 {
            for ports in 2..=9 {
                let p = ProtocolParams::new(ports, 1, d).unwrap();
                let (a, b) = (fidelity(&p), pbt_fidelity(ports, d));
                assert!((a - b).abs() <= 1e-14 * b, "{ports} {d}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn probability_anchor() {
        let p = ProtocolParams::new(2, 1, 2).unwrap();
        let s = success_probability(&p);
        assert_eq!(s.value, q(1, 3));
        assert_eq!(s.optimal[0].mu, YoungDiagram::row(2));
        assert_eq!(s.optimal[0].ratio, q(8, 3));
    }

    #[test]
    fn bounds_on_grid() {
        for d in 2..=4 {
            for ports in 2..=8 {
                for k in 1..=ports / 2 {
                    let p = ProtocolParams::new(ports, k, d).unwrap();
                    let f = fidelity(&p);
                    assert!(f > 0.0 && f <= 1.0);
                    let pr = success_probability(&p).value;
                    assert!(pr > BigRational::zero() && pr < q(1, 1));
                }
            }
        }
    }

    #[test]
    fn tie_break_prefers_first() {
        assert_eq!(optimal_outcome(&[q(1, 2), q(1, 2), q(1, 3)]), Some(0));
        assert_eq!(optimal_outcome(&[q(1, 3), q(1, 2), q(1, 2)]), Some(1));
        assert_eq!(optimal_outcome(&[]), None);
    }

    #[test]
    fn comparison_examples() {
        let c = compare_protocols(4, 2, 2).unwrap();
        assert!(c.fidelity_mpbt > c.fidelity_pbt_bigport);
        let c = compare_protocols(5, 1, 3).unwrap();
        assert_eq!(c.fidelity_mpbt, c.fidelity_pbt_bigport);
        assert_eq!(c.probability_mpbt, c.probability_pbt_bigport);
        let c = compare_protocols(6, 3, 2).unwrap();
        assert!(c.probability_mpbt > c.probability_pbt_bigport);
        assert!(compare_protocols(3, 2, 2).is_err());
    }
}
