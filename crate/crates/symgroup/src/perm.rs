use std::fmt;

use crate::SymError;

/// A permutation of `{1..n}` in one-line notation.
///
/// Composition follows function composition: `compose(p, q)` maps `i` to `p(q(i))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // Zero-based images.
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { images: (0..n).collect() }
    }

    /// From one-line notation with one-based images, e.g. `[2, 1, 3]` for `(1 2)` in `S(3)`.
    pub fn from_one_line(images: &[usize]) -> Result<Self, SymError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(SymError::NotAPermutation(images.to_vec()));
            }
            seen[x - 1] = true;
        }
        Ok(Self { images: images.iter().map(|x| x - 1).collect() })
    }

    /// The transposition of the one-based points `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        assert!(a >= 1 && b >= 1 && a <= n && b <= n, "transposition ({a} {b}) outside S({n})");
        let mut p = Self::identity(n);
        p.images.swap(a - 1, b - 1);
        p
    }

    /// The adjacent transposition `(i i+1)`.
    pub fn adjacent(n: usize, i: usize) -> Self {
        Self::transposition(n, i, i + 1)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the one-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    /// One-based one-line notation.
    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Self { images: inv }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self, SymError> {
        if self.degree() != other.degree() {
            return Err(SymError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(Self { images: other.images.iter().map(|&x| self.images[x]).collect() })
    }

    /// Embeds into `S(m)` for `m ≥ n`, fixing the extra points.
    pub fn extend(&self, m: usize) -> Self {
        assert!(m >= self.degree());
        let mut images = self.images.clone();
        images.extend(self.degree()..m);
        Self { images }
    }

    /// Cycle lengths in decreasing order (fixed points included).
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    /// Adjacent transpositions `i1, i2, ..., im` (one-based, `s_i = (i i+1)`) with
    /// `self = s_im ∘ ... ∘ s_i1`, found by repeatedly removing the first descent.
    pub fn adjacent_factors(&self) -> Vec<usize> {
        let mut p = self.images.clone();
        let mut out = Vec::new();
        loop {
            match (0..p.len().saturating_sub(1)).find(|&i| p[i] > p[i + 1]) {
                Some(i) => {
                    p.swap(i, i + 1);
                    out.push(i + 1);
                }
                None => break,
            }
        }
        out
    }

    pub fn sign(&self) -> i32 {
        if self.adjacent_factors().len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", x + 1)?;
        }
        write!(f, "]")
    }
}

/// `p ∘ q`.
pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation, SymError> {
    p.compose(q)
}

pub fn invert(p: &Permutation) -> Permutation {
    p.inverse()
}

/// All of `S(n)` in lexicographic one-line order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![Permutation { images: cur.clone() }];
    loop {
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(Permutation { images: cur.clone() });
    }
    out
}

/// Right-coset representatives of `S(g) / S(h)`, where `S(h)` permutes `{1..h}`
/// and fixes `h+1..g`.
///
/// Each representative `τ` is fixed by the ordered tuple `(a_1..a_{g-h})` of
/// points sent to `h+1..g` (`τ(a_j) = h+j`); the remaining points go to `1..h`
/// in increasing order. Two permutations lie in the same coset `S(h)τ` exactly
/// when they share this tuple. The identity comes first, then the other tuples
/// in lexicographic order. There are `g!/h!` representatives.
pub fn coset_transversal(g: usize, h: usize) -> Vec<Permutation> {
    assert!(h <= g, "subgroup S({h}) larger than S({g})");
    let k = g - h;
    let mut tuples = Vec::new();
    let mut cur = Vec::with_capacity(k);
    let mut used = vec![false; g];
    fn rec(g: usize, k: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for a in 0..g {
            if !used[a] {
                used[a] = true;
                cur.push(a);
                rec(g, k, cur, used, out);
                cur.pop();
                used[a] = false;
            }
        }
    }
    rec(g, k, &mut cur, &mut used, &mut tuples);
    let identity_tuple: Vec<usize> = (h..g).collect();
    let build = |t: &[usize]| {
        let mut images = vec![usize::MAX; g];
        for (j, &a) in t.iter().enumerate() {
            images[a] = h + j;
        }
        let mut next = 0;
        for x in images.iter_mut() {
            if *x == usize::MAX {
                *x = next;
                next += 1;
            }
        }
        Permutation { images }
    };
    let mut out = vec![Permutation::identity(g)];
    out.extend(tuples.iter().filter(|t| **t != identity_tuple).map(|t| build(t)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Permutation {
        Permutation::from_one_line(v).unwrap()
    }

    #[test]
    fn composition_examples() {
        let s12 = Permutation::transposition(3, 1, 2);
        let s23 = Permutation::transposition(3, 2, 3);
        let id = Permutation::identity(3);
        assert_eq!(compose(&id, &s12).unwrap(), s12);
        assert_eq!(invert(&s12), s12);
        let c = compose(&s12, &s23).unwrap();
        assert_eq!((c.apply(1), c.apply(2), c.apply(3)), (2, 3, 1));
        assert!(compose(&s12, &Permutation::identity(4)).is_err());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_one_line(&[1, 1]).is_err());
        assert!(Permutation::from_one_line(&[0, 1]).is_err());
        assert!(Permutation::from_one_line(&[3, 1]).is_err());
    }

    #[test]
    fn factorization_reproduces_permutation() {
        for q in all_permutations(5) {
            let mut acc = Permutation::identity(5);
            for i in q.adjacent_factors() {
                acc = Permutation::adjacent(5, i).compose(&acc).unwrap();
            }
            assert_eq!(acc, q);
        }
    }

    #[test]
    fn enumerates_whole_group() {
        let all = all_permutations(4);
        assert_eq!(all.len(), 24);
        let set: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(set.len(), 24);
        assert!(all[0].is_identity());
        assert_eq!(all_permutations(0).len(), 1);
    }

    #[test]
    fn transversal_examples() {
        assert_eq!(coset_transversal(2, 1).len(), 2);
        assert_eq!(coset_transversal(3, 1).len(), 6);
        assert_eq!(coset_transversal(4, 2).len(), 12);
        assert!(coset_transversal(4, 2)[0].is_identity());
    }

    #[test]
    fn transversal_hits_every_right_coset_once() {
        for (g, h) in [(4, 2), (5, 3), (5, 1), (4, 4), (3, 0)] {
            let reps = coset_transversal(g, h);
            let sub: Vec<Permutation> = all_permutations(h).iter().map(|x| x.extend(g)).collect();
            let mut all = std::collections::HashSet::new();
            for t in &reps {
                for s in &sub {
                    assert!(all.insert(s.compose(t).unwrap()), "cosets overlap for ({g},{h})");
                }
            }
            assert_eq!(all.len(), all_permutations(g).len());
        }
    }

    #[test]
    fn cycle_types() {
        assert_eq!(p(&[2, 3, 1, 4]).cycle_type(), vec![3, 1]);
        assert_eq!(Permutation::identity(3).cycle_type(), vec![1, 1, 1]);
        assert_eq!(p(&[2, 1, 4, 3]).sign(), 1);
    }
}
