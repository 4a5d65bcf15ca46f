use nalgebra::DMatrix;

use crate::OracleError;

/// Default bound on `d^n` for every operator the oracle materialises.
pub const DEFAULT_MAX_DIM: usize = 4096;

/// `d^n`, or `None` on overflow.
pub fn checked_dim(d: usize, n: usize) -> Option<usize> {
    d.checked_pow(n as u32)
}

pub(crate) fn require_dim(d: usize, n: usize, max_dim: usize) -> Result<usize, OracleError> {
    match checked_dim(d, n) {
        Some(dim) if dim <= max_dim => Ok(dim),
        _ => Err(OracleError::ResourceCap { d, n, max_dim }),
    }
}

/// Digits of a basis index, site 1 first (the most significant factor).
pub fn digits(mut index: usize, d: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for s in (0..n).rev() {
        out[s] = index % d;
        index /= d;
    }
    out
}

pub fn index_of(digits: &[usize], d: usize) -> usize {
    digits.iter().fold(0, |acc, &x| acc * d + x)
}

/// A real operator on `(C^d)^{⊗n}` in the computational basis, site 1 being
/// the most significant tensor factor.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    matrix: DMatrix<f64>,
    d: usize,
    n: usize,
}

impl DenseOperator {
    pub fn from_matrix(matrix: DMatrix<f64>, d: usize, n: usize) -> Result<Self, OracleError> {
        let dim = checked_dim(d, n).ok_or(OracleError::ResourceCap { d, n, max_dim: usize::MAX })?;
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(OracleError::Shape(format!("{}x{} matrix for d = {d}, n = {n}", matrix.nrows(), matrix.ncols())));
        }
        Ok(Self { matrix, d, n })
    }

    pub fn zeros(d: usize, n: usize, max_dim: usize) -> Result<Self, OracleError> {
        let dim = require_dim(d, n, max_dim)?;
        Ok(Self { matrix: DMatrix::zeros(dim, dim), d, n })
    }

    pub fn identity(d: usize, n: usize, max_dim: usize) -> Result<Self, OracleError> {
        let dim = require_dim(d, n, max_dim)?;
        Ok(Self { matrix: DMatrix::identity(dim, dim), d, n })
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn matrix_mut(&mut self) -> &mut DMatrix<f64> {
        &mut self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.matrix
    }

    pub fn local_dim(&self) -> usize {
        self.d
    }

    pub fn sites(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace()
    }

    fn same_space(&self, other: &Self) -> Result<(), OracleError> {
        if self.d != other.d || self.n != other.n {
            return Err(OracleError::Shape(format!(
                "operators on (C^{})^{} and (C^{})^{}",
                self.d, self.n, other.d, other.n
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, OracleError> {
        self.same_space(other)?;
        Ok(Self { matrix: &self.matrix * &other.matrix, d: self.d, n: self.n })
    }

    pub fn add(&self, other: &Self) -> Result<Self, OracleError> {
        self.same_space(other)?;
        Ok(Self { matrix: &self.matrix + &other.matrix, d: self.d, n: self.n })
    }

    pub fn scale(&self, c: f64) -> Self {
        Self { matrix: &self.matrix * c, d: self.d, n: self.n }
    }

    /// Largest elementwise deviation.
    pub fn distance(&self, other: &Self) -> Result<f64, OracleError> {
        self.same_space(other)?;
        Ok((&self.matrix - &other.matrix).amax())
    }

    pub fn transpose(&self) -> Self {
        Self { matrix: self.matrix.transpose(), d: self.d, n: self.n }
    }

    /// `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Result<Self, OracleError> {
        if self.d != other.d {
            return Err(OracleError::Shape("tensor product of different local dimensions".into()));
        }
        Ok(Self { matrix: self.matrix.kronecker(&other.matrix), d: self.d, n: self.n + other.n })
    }

    fn check_sites(&self, sites: &[usize]) -> Result<(), OracleError> {
        let mut seen = vec![false; self.n];
        for &s in sites {
            if s == 0 || s > self.n || seen[s - 1] {
                return Err(OracleError::InvalidSites(format!("{sites:?} on {} sites", self.n)));
            }
            seen[s - 1] = true;
        }
        Ok(())
    }

    /// This operator placed on the listed sites (one-based, in this order) of
    /// an `n`-site system, with the identity elsewhere.
    pub fn embed(&self, sites: &[usize], n: usize, max_dim: usize) -> Result<Self, OracleError> {
        if sites.len() != self.n {
            return Err(OracleError::InvalidSites(format!("{} sites for a {}-site operator", sites.len(), self.n)));
        }
        let mut out = Self::zeros(self.d, n, max_dim)?;
        out.check_sites(sites)?;
        let d = self.d;
        let rest: Vec<usize> = (1..=n).filter(|s| !sites.contains(s)).collect();
        let place = |local: usize, outer: usize| {
            let mut full = vec![0; n];
            for (s, x) in sites.iter().zip(digits(local, d, sites.len())) {
                full[s - 1] = x;
            }
            for (s, x) in rest.iter().zip(digits(outer, d, rest.len())) {
                full[s - 1] = x;
            }
            index_of(&full, d)
        };
        let outer_dim = d.pow(rest.len() as u32);
        for o in 0..outer_dim {
            for a in 0..self.dim() {
                for b in 0..self.dim() {
                    let v = self.matrix[(a, b)];
                    if v != 0.0 {
                        out.matrix[(place(a, o), place(b, o))] += v;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Transposes the tensor legs at the listed sites.
    pub fn partial_transpose(&self, sites: &[usize]) -> Result<Self, OracleError> {
        self.check_sites(sites)?;
        let (d, n) = (self.d, self.n);
        let mut out = DMatrix::zeros(self.dim(), self.dim());
        for x in 0..self.dim() {
            let dx = digits(x, d, n);
            for y in 0..self.dim() {
                let dy = digits(y, d, n);
                let (mut a, mut b) = (dx.clone(), dy.clone());
                for &s in sites {
                    a[s - 1] = dy[s - 1];
                    b[s - 1] = dx[s - 1];
                }
                out[(x, y)] = self.matrix[(index_of(&a, d), index_of(&b, d))];
            }
        }
        Ok(Self { matrix: out, d, n })
    }

    /// Traces out the listed sites; the rest keep their relative order.
    pub fn partial_trace(&self, sites: &[usize]) -> Result<Self, OracleError> {
        self.check_sites(sites)?;
        let (d, n) = (self.d, self.n);
        let keep: Vec<usize> = (1..=n).filter(|s| !sites.contains(s)).collect();
        let kept_dim = d.pow(keep.len() as u32);
        let traced_dim = d.pow(sites.len() as u32);
        let join = |k: usize, t: usize| {
            let mut full = vec![0; n];
            for (s, x) in keep.iter().zip(digits(k, d, keep.len())) {
                full[s - 1] = x;
            }
            for (s, x) in sites.iter().zip(digits(t, d, sites.len())) {
                full[s - 1] = x;
            }
            index_of(&full, d)
        };
        let mut out = DMatrix::zeros(kept_dim, kept_dim);
        for r in 0..kept_dim {
            for c in 0..kept_dim {
                out[(r, c)] = (0..traced_dim).map(|t| self.matrix[(join(r, t), join(c, t))]).sum();
            }
        }
        Ok(Self { matrix: out, d, n: keep.len() })
    }

    /// Smallest and largest eigenvalue of the symmetric part.
    pub fn eigen_range(&self) -> (f64, f64) {
        let sym = (&self.matrix + self.matrix.transpose()) * 0.5;
        let ev = sym.symmetric_eigenvalues();
        (ev.min(), ev.max())
    }
}
