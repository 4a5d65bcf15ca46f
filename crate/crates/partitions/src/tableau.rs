use crate::lattice::remove_box;
use crate::YoungDiagram;

/// A standard Young tableau, stored as the row (zero-based) holding each entry `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StandardTableau {
    diagram: YoungDiagram,
    row_of: Vec<usize>,
}

impl StandardTableau {
    /// Builds a tableau from the row of each entry, checking that the filling is standard.
    pub fn from_rows_of_entries(row_of: Vec<usize>) -> Option<Self> {
        let mut rows: Vec<usize> = Vec::new();
        for &r in &row_of {
            if r > rows.len() {
                return None;
            }
            if r == rows.len() {
                rows.push(0);
            }
            if r > 0 && rows[r - 1] <= rows[r] {
                return None;
            }
            rows[r] += 1;
        }
        Some(Self { diagram: YoungDiagram::from_rows_unchecked(rows), row_of })
    }

    pub fn diagram(&self) -> &YoungDiagram {
        &self.diagram
    }

    /// Row of entry `i` (entries are `1..=n`).
    pub fn row(&self, entry: usize) -> usize {
        self.row_of[entry - 1]
    }

    /// Column of entry `i`.
    pub fn col(&self, entry: usize) -> usize {
        let r = self.row_of[entry - 1];
        self.row_of[..entry - 1].iter().filter(|&&x| x == r).count()
    }

    /// Content `col - row` of entry `i`.
    pub fn content(&self, entry: usize) -> i64 {
        self.col(entry) as i64 - self.row(entry) as i64
    }

    pub fn rows_of_entries(&self) -> &[usize] {
        &self.row_of
    }

    /// The tableau formed by entries `1..=m`.
    pub fn restrict(&self, m: usize) -> StandardTableau {
        StandardTableau::from_rows_of_entries(self.row_of[..m].to_vec()).expect("prefix of a standard tableau is standard")
    }

    /// Filling as a grid of rows.
    pub fn grid(&self) -> Vec<Vec<usize>> {
        let mut g = vec![Vec::new(); self.diagram.num_rows()];
        for (i, &r) in self.row_of.iter().enumerate() {
            g[r].push(i + 1);
        }
        g
    }
}

/// Standard tableaux of shape `mu` in last-letter order: sorted by the shape
/// left after removing `n`, then `n-1`, and so on, each compared
/// lexicographically decreasing. Restricting to `S(m)` then groups tableaux
/// into contiguous blocks.
pub fn enumerate_standard_tableaux(mu: &YoungDiagram) -> Vec<StandardTableau> {
    fn rec(shape: &YoungDiagram) -> Vec<Vec<usize>> {
        if shape.size() == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        // Removing a lower corner leaves a lexicographically larger shape, so walk corners bottom-up.
        let corners: Vec<(usize, YoungDiagram)> = remove_box(shape)
            .into_iter()
            .map(|nu| {
                let row = (0..shape.num_rows()).find(|&i| nu.row_len(i) != shape.row_len(i)).unwrap();
                (row, nu)
            })
            .collect();
        for (row, nu) in corners.into_iter().rev() {
            for mut t in rec(&nu) {
                t.push(row);
                out.push(t);
            }
        }
        out
    }
    rec(mu)
        .into_iter()
        .map(|row_of| StandardTableau { diagram: mu.clone(), row_of })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{enumerate_diagrams, irrep_dimension};
    use num_bigint::BigUint;

    fn yd(rows: &[usize]) -> YoungDiagram {
        YoungDiagram::new(rows.to_vec()).unwrap()
    }

    #[test]
    fn tableau_examples() {
        assert_eq!(enumerate_standard_tableaux(&yd(&[2])).len(), 1);
        let t21 = enumerate_standard_tableaux(&yd(&[2, 1]));
        assert_eq!(t21.len(), 2);
        assert_eq!(t21[0].grid(), vec![vec![1, 2], vec![3]]);
        assert_eq!(t21[1].grid(), vec![vec![1, 3], vec![2]]);
        let t22 = enumerate_standard_tableaux(&yd(&[2, 2]));
        assert_eq!(t22.len(), 2);
        assert_eq!(t22[0].grid(), vec![vec![1, 2], vec![3, 4]]);
    }

    #[test]
    fn counts_match_hook_length_formula() {
        for n in 0..=8 {
            for mu in enumerate_diagrams(n, n.max(1)) {
                let ts = enumerate_standard_tableaux(&mu);
                assert_eq!(BigUint::from(ts.len()), irrep_dimension(&mu), "{mu}");
                for t in &ts {
                    assert_eq!(t.diagram(), &mu);
                    assert!(StandardTableau::from_rows_of_entries(t.rows_of_entries().to_vec()).is_some());
                }
            }
        }
    }

    #[test]
    fn restriction_paths_are_contiguous() {
        let mu = yd(&[3, 2, 1]);
        let ts = enumerate_standard_tableaux(&mu);
        for m in 0..=6 {
            let keys: Vec<Vec<YoungDiagram>> =
                ts.iter().map(|t| (m..6).map(|j| t.restrict(j).diagram().clone()).collect()).collect();
            let mut seen: Vec<&Vec<YoungDiagram>> = Vec::new();
            for (i, k) in keys.iter().enumerate() {
                if i == 0 || &keys[i - 1] != k {
                    assert!(!seen.contains(&k), "path reappears at m = {m}");
                    seen.push(k);
                }
            }
        }
    }

    #[test]
    fn rejects_non_standard_fillings() {
        assert!(StandardTableau::from_rows_of_entries(vec![1]).is_none());
        assert!(StandardTableau::from_rows_of_entries(vec![0, 1, 1]).is_none());
        assert!(StandardTableau::from_rows_of_entries(vec![0, 1, 0]).is_some());
    }

    #[test]
    fn contents_follow_grid() {
        let t = &enumerate_standard_tableaux(&yd(&[2, 1]))[1];
        assert_eq!(t.content(1), 0);
        assert_eq!(t.content(2), -1);
        assert_eq!(t.content(3), 1);
    }
}
