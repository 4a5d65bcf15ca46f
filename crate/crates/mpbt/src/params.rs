use num_bigint::BigUint;
use num_traits::One;

use crate::MpbtError;

/// A protocol instance: `ports` shared maximally entangled pairs of local
/// dimension `dim`, of which `teleported` systems are sent in one go.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProtocolParams {
    ports: usize,
    teleported: usize,
    dim: usize,
}

impl ProtocolParams {
    /// Requires `ports ≥ 1`, `dim ≥ 2` and `1 ≤ teleported ≤ ⌊ports/2⌋`.
    pub fn new(ports: usize, teleported: usize, dim: usize) -> Result<Self, MpbtError> {
        if ports == 0 || dim < 2 || teleported == 0 || teleported > ports / 2 {
            return Err(MpbtError::InvalidParams { ports, teleported, dim });
        }
        Ok(Self { ports, teleported, dim })
    }

    /// The number of ports `N`.
    pub fn ports(&self) -> usize {
        self.ports
    }

    /// The number of teleported systems `k`.
    pub fn teleported(&self) -> usize {
        self.teleported
    }

    /// The local dimension `d`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Total number of sites `n = N + k` on which the signals act.
    pub fn sites(&self) -> usize {
        self.ports + self.teleported
    }

    /// Number of measurement outcomes, `k!·C(N,k) = N!/(N-k)!`.
    pub fn num_signals(&self) -> BigUint {
        falling_factorial(self.ports, self.teleported)
    }

    /// `d^(N+k)`, the dimension of the space the signals live on.
    pub fn hilbert_dim(&self) -> BigUint {
        BigUint::from(self.dim).pow(self.sites() as u32)
    }
}

pub(crate) fn falling_factorial(n: usize, k: usize) -> BigUint {
    ((n - k + 1)..=n).fold(BigUint::one(), |acc, x| acc * x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(ProtocolParams::new(2, 1, 2).is_ok());
        assert!(ProtocolParams::new(2, 2, 2).is_err());
        assert!(ProtocolParams::new(1, 1, 2).is_err());
        assert!(ProtocolParams::new(4, 0, 2).is_err());
        assert!(ProtocolParams::new(4, 2, 1).is_err());
        assert!(ProtocolParams::new(0, 0, 2).is_err());
    }

    #[test]
    fn counts() {
        let p = ProtocolParams::new(5, 2, 3).unwrap();
        assert_eq!(p.sites(), 7);
        assert_eq!(p.num_signals(), BigUint::from(20u32));
        assert_eq!(p.hilbert_dim(), BigUint::from(2187u32));
    }
}
