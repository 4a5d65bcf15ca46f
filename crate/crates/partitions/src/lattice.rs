//! Navigation on Young's lattice, optionally truncated to diagrams with a bounded number of rows.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::One;

use crate::YoungDiagram;

/// A chain of diagrams, each obtained from the next by removing one box.
/// The first element is the top of the chain.
pub type LatticePath = Vec<YoungDiagram>;

/// True when `alpha` fits inside `mu` (`alpha ⪯ mu`).
pub fn contains(mu: &YoungDiagram, alpha: &YoungDiagram) -> bool {
    alpha.num_rows() <= mu.num_rows() && alpha.rows().iter().zip(mu.rows()).all(|(a, m)| a <= m)
}

/// True when `mu` is `alpha` plus exactly one box.
pub fn covers(mu: &YoungDiagram, alpha: &YoungDiagram) -> bool {
    mu.size() == alpha.size() + 1 && contains(mu, alpha)
}

/// Diagrams obtained by adding one box, ordered by the row of the new box (top first).
pub fn add_box(diagram: &YoungDiagram, max_rows: Option<usize>) -> Vec<YoungDiagram> {
    let rows = diagram.rows();
    let limit = max_rows.unwrap_or(usize::MAX);
    let mut out = Vec::new();
    if rows.len() > limit {
        return out;
    }
    for i in 0..=rows.len() {
        if i >= limit {
            break;
        }
        let fits = i == 0 || rows[i - 1] > diagram.row_len(i);
        if fits {
            let mut r = rows.to_vec();
            if i == rows.len() {
                r.push(1);
            } else {
                r[i] += 1;
            }
            out.push(YoungDiagram::from_rows_unchecked(r));
        }
    }
    out
}

/// Diagrams obtained by removing one corner box, ordered by the row of the removed box (top first).
pub fn remove_box(diagram: &YoungDiagram) -> Vec<YoungDiagram> {
    let rows = diagram.rows();
    let mut out = Vec::new();
    for i in 0..rows.len() {
        if rows[i] > diagram.row_len(i + 1) {
            let mut r = rows.to_vec();
            r[i] -= 1;
            if r[i] == 0 {
                r.pop();
            }
            out.push(YoungDiagram::from_rows_unchecked(r));
        }
    }
    out
}

/// Number of one-box-at-a-time paths from `alpha` up to `mu` on the lattice
/// truncated to at most `max_rows` rows; zero when `alpha ⋠ mu`.
pub fn path_count(mu: &YoungDiagram, alpha: &YoungDiagram, max_rows: usize) -> BigUint {
    // Every diagram on such a path lies inside mu, so only mu's own row count matters.
    if mu.num_rows() > max_rows || !contains(mu, alpha) {
        return BigUint::ZERO;
    }
    let mut memo = HashMap::new();
    count_down(mu, alpha, &mut memo)
}

fn count_down(mu: &YoungDiagram, alpha: &YoungDiagram, memo: &mut HashMap<YoungDiagram, BigUint>) -> BigUint {
    if mu.size() == alpha.size() {
        return if mu == alpha { BigUint::one() } else { BigUint::ZERO };
    }
    if let Some(c) = memo.get(mu) {
        return c.clone();
    }
    let mut total = BigUint::ZERO;
    for nu in remove_box(mu) {
        if contains(&nu, alpha) {
            total += count_down(&nu, alpha, memo);
        }
    }
    memo.insert(mu.clone(), total.clone());
    total
}

/// All lattice paths from `mu` down to `alpha`, ordered so that paths whose
/// upper layers are lexicographically larger come first. This is the order in
/// which the restriction blocks of the orthogonal form appear.
pub fn paths_between(mu: &YoungDiagram, alpha: &YoungDiagram) -> Vec<LatticePath> {
    fn rec(cur: &YoungDiagram, alpha: &YoungDiagram, chain: &mut LatticePath, out: &mut Vec<LatticePath>) {
        if cur.size() == alpha.size() {
            if cur == alpha {
                out.push(chain.clone());
            }
            return;
        }
        let mut below: Vec<YoungDiagram> = remove_box(cur).into_iter().filter(|nu| contains(nu, alpha)).collect();
        below.sort_by(|a, b| b.cmp(a));
        for nu in below {
            chain.push(nu.clone());
            rec(&nu, alpha, chain, out);
            chain.pop();
        }
    }
    let mut out = Vec::new();
    if contains(mu, alpha) {
        rec(mu, alpha, &mut vec![mu.clone()], &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{enumerate_diagrams, irrep_dimension};

    fn yd(rows: &[usize]) -> YoungDiagram {
        YoungDiagram::new(rows.to_vec()).unwrap()
    }

    #[test]
    fn navigation_examples() {
        assert!(covers(&yd(&[2]), &yd(&[1])));
        assert!(!covers(&yd(&[3]), &yd(&[1])));
        assert_eq!(remove_box(&yd(&[2, 1])), vec![yd(&[1, 1]), yd(&[2])]);
        assert_eq!(add_box(&yd(&[1]), Some(2)), vec![yd(&[2]), yd(&[1, 1])]);
        assert_eq!(add_box(&yd(&[1, 1]), Some(2)), vec![yd(&[2, 1])]);
        assert_eq!(add_box(&YoungDiagram::empty(), None), vec![yd(&[1])]);
        assert_eq!(remove_box(&yd(&[1])), vec![YoungDiagram::empty()]);
    }

    #[test]
    fn path_count_examples() {
        assert_eq!(path_count(&yd(&[2]), &yd(&[1]), 2), 1u32.into());
        assert_eq!(path_count(&yd(&[2, 1]), &yd(&[1]), 2), 2u32.into());
        assert_eq!(path_count(&yd(&[3]), &yd(&[1, 1]), 3), BigUint::ZERO);
        assert_eq!(path_count(&yd(&[2, 1, 1]), &yd(&[1]), 2), BigUint::ZERO);
    }

    #[test]
    fn paths_from_empty_count_tableaux() {
        for n in 0..=7 {
            for mu in enumerate_diagrams(n, n.max(1)) {
                let c = path_count(&mu, &YoungDiagram::empty(), n.max(1));
                assert_eq!(c, irrep_dimension(&mu));
                assert_eq!(BigUint::from(paths_between(&mu, &YoungDiagram::empty()).len()), c);
            }
        }
    }

    #[test]
    fn listed_paths_are_valid_chains() {
        let mu = yd(&[3, 2, 1]);
        let alpha = yd(&[2, 1]);
        let ps = paths_between(&mu, &alpha);
        assert_eq!(BigUint::from(ps.len()), path_count(&mu, &alpha, 3));
        for p in &ps {
            assert_eq!(p.first(), Some(&mu));
            assert_eq!(p.last(), Some(&alpha));
            assert!(p.windows(2).all(|w| covers(&w[0], &w[1])));
        }
    }
}
