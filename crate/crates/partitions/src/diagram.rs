use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PartitionError {
    #[error("row lengths must be positive, got {0:?}")]
    ZeroRow(Vec<usize>),
    #[error("row lengths must be weakly decreasing, got {0:?}")]
    NotDecreasing(Vec<usize>),
}

/// An integer partition drawn as a Young diagram.
///
/// Ordering is lexicographic on the row list, so for a fixed box count the
/// one-row diagram is the largest and the one-column diagram the smallest.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct YoungDiagram {
    rows: Vec<usize>,
}

impl YoungDiagram {
    pub fn new(rows: Vec<usize>) -> Result<Self, PartitionError> {
        if rows.contains(&0) {
            return Err(PartitionError::ZeroRow(rows));
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotDecreasing(rows));
        }
        Ok(Self { rows })
    }

    /// The diagram with no boxes.
    pub fn empty() -> Self {
        Self { rows: Vec::new() }
    }

    /// Single-row diagram `(n)`; empty for `n = 0`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Self { rows: vec![n] }
        }
    }

    /// Single-column diagram `(1^n)`.
    pub fn column(n: usize) -> Self {
        Self { rows: vec![1; n] }
    }

    /// Builds from rows that are already known to be valid.
    pub(crate) fn from_rows_unchecked(rows: Vec<usize>) -> Self {
        debug_assert!(rows.iter().all(|&r| r > 0) && rows.windows(2).all(|w| w[0] >= w[1]));
        Self { rows }
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    /// Total number of boxes.
    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Length of row `i`, zero past the last row.
    pub fn row_len(&self, i: usize) -> usize {
        self.rows.get(i).copied().unwrap_or(0)
    }

    /// Length of column `j`.
    pub fn col_len(&self, j: usize) -> usize {
        self.rows.iter().take_while(|&&r| r > j).count()
    }

    pub fn transpose(&self) -> Self {
        let width = self.row_len(0);
        Self { rows: (0..width).map(|j| self.col_len(j)).collect() }
    }

    /// Hook length of the box in row `i`, column `j` (zero-based).
    pub fn hook(&self, i: usize, j: usize) -> usize {
        (self.rows[i] - j - 1) + (self.col_len(j) - i - 1) + 1
    }

    /// Sum of contents `col - row` over all boxes.
    pub fn content_sum(&self) -> i64 {
        let mut s = 0i64;
        for (i, &r) in self.rows.iter().enumerate() {
            for j in 0..r {
                s += j as i64 - i as i64;
            }
        }
        s
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

impl TryFrom<Vec<usize>> for YoungDiagram {
    type Error = PartitionError;
    fn try_from(rows: Vec<usize>) -> Result<Self, Self::Error> {
        Self::new(rows)
    }
}

/// All partitions of `n` with at most `max_rows` parts, lexicographically decreasing.
pub fn enumerate_diagrams(n: usize, max_rows: usize) -> Vec<YoungDiagram> {
    fn rec(left: usize, cap: usize, rows_left: usize, cur: &mut Vec<usize>, out: &mut Vec<YoungDiagram>) {
        if left == 0 {
            out.push(YoungDiagram::from_rows_unchecked(cur.clone()));
            return;
        }
        if rows_left == 0 {
            return;
        }
        for r in (1..=cap.min(left)).rev() {
            cur.push(r);
            rec(left - r, r, rows_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, max_rows, &mut Vec::new(), &mut out);
    out
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Dimension of the symmetric-group irrep, by the hook length formula.
pub fn irrep_dimension(mu: &YoungDiagram) -> BigUint {
    let mut hooks = BigUint::one();
    for (i, &r) in mu.rows.iter().enumerate() {
        for j in 0..r {
            hooks *= mu.hook(i, j);
        }
    }
    factorial(mu.size()) / hooks
}

/// Multiplicity of the irrep `mu` in `(C^d)^{⊗n}`: the dimension of the
/// matching unitary-group irrep from the Weyl formula. Zero when `mu` has
/// more than `d` rows.
pub fn sw_multiplicity(mu: &YoungDiagram, d: usize) -> BigUint {
    if mu.num_rows() > d {
        return BigUint::ZERO;
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..d {
        for j in (i + 1)..d {
            num *= mu.row_len(i) - mu.row_len(j) + j - i;
            den *= j - i;
        }
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    fn yd(rows: &[usize]) -> YoungDiagram {
        YoungDiagram::new(rows.to_vec()).unwrap()
    }

    #[test]
    fn rejects_invalid_rows() {
        assert!(YoungDiagram::new(vec![1, 2]).is_err());
        assert!(YoungDiagram::new(vec![2, 0]).is_err());
        assert_eq!(YoungDiagram::new(vec![]).unwrap(), YoungDiagram::empty());
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_diagrams(2, 2), vec![yd(&[2]), yd(&[1, 1])]);
        assert_eq!(enumerate_diagrams(3, 2), vec![yd(&[3]), yd(&[2, 1])]);
        assert_eq!(enumerate_diagrams(6, 6).len(), 11);
        assert_eq!(enumerate_diagrams(0, 1), vec![YoungDiagram::empty()]);
    }

    #[test]
    fn enumeration_is_strictly_decreasing() {
        for n in 0..10 {
            let ds = enumerate_diagrams(n, n.max(1));
            assert!(ds.windows(2).all(|w| w[0] > w[1]));
        }
    }

    #[test]
    fn partition_counts_match_euler_recurrence() {
        // p(n) from the pentagonal number theorem, independent of the enumerator.
        let mut p = vec![1i64];
        for n in 1..=20i64 {
            let mut s = 0i64;
            let mut k = 1i64;
            loop {
                let g1 = k * (3 * k - 1) / 2;
                if g1 > n {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                s += sign * p[(n - g1) as usize];
                let g2 = k * (3 * k + 1) / 2;
                if g2 <= n {
                    s += sign * p[(n - g2) as usize];
                }
                k += 1;
            }
            p.push(s);
        }
        for n in 0..=20 {
            assert_eq!(enumerate_diagrams(n, n.max(1)).len() as i64, p[n], "n = {n}");
        }
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(irrep_dimension(&yd(&[1])), 1u32.into());
        assert_eq!(irrep_dimension(&yd(&[2, 1])), 2u32.into());
        assert_eq!(irrep_dimension(&yd(&[5])), 1u32.into());
        assert_eq!(irrep_dimension(&yd(&[2, 2])), 2u32.into());
        assert_eq!(irrep_dimension(&yd(&[4, 2, 1])), 35u32.into());
    }

    #[test]
    fn multiplicity_examples() {
        for d in 1..6 {
            assert_eq!(sw_multiplicity(&yd(&[1]), d), d.into());
        }
        assert_eq!(sw_multiplicity(&yd(&[2, 1]), 2), 2u32.into());
        assert_eq!(sw_multiplicity(&yd(&[1, 1, 1]), 2), BigUint::ZERO);
        assert_eq!(sw_multiplicity(&yd(&[2, 1]), 3), 8u32.into());
        assert_eq!(sw_multiplicity(&YoungDiagram::empty(), 3), 1u32.into());
    }

    #[test]
    fn schur_weyl_completeness() {
        for d in [2usize, 3] {
            for n in 0..=8 {
                let total: BigUint = enumerate_diagrams(n, d)
                    .iter()
                    .map(|mu| sw_multiplicity(mu, d) * irrep_dimension(mu))
                    .sum();
                assert_eq!(total, BigUint::from(d).pow(n as u32), "d = {d}, n = {n}");
            }
        }
    }

    #[test]
    fn transpose_preserves_dimension() {
        for n in 0..=8 {
            for mu in enumerate_diagrams(n, n.max(1)) {
                assert_eq!(mu.transpose().transpose(), mu);
                assert_eq!(irrep_dimension(&mu), irrep_dimension(&mu.transpose()));
            }
        }
    }

    #[test]
    fn content_sum_of_small_diagrams() {
        assert_eq!(yd(&[3]).content_sum(), 3);
        assert_eq!(yd(&[1, 1, 1]).content_sum(), -3);
        assert_eq!(yd(&[2, 1]).content_sum(), 0);
    }
}
