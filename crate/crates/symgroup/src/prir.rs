//! Block structure of an irrep restricted to a chain subgroup `S(m)`, and the
//! bilinear sum rule over coset representatives.

use std::ops::Range;

use nalgebra::DMatrix;
use partitions::{enumerate_diagrams, LatticePath, YoungDiagram};

use crate::{all_permutations, coset_transversal, OrthogonalIrrep, Permutation, SymError};

/// A contiguous range of basis indices on which `S(m)` acts as the irrep `label`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictionBlock {
    pub label: YoungDiagram,
    /// Diagrams from the full shape down to `label`, one box per step.
    pub path: LatticePath,
    pub range: Range<usize>,
}

/// A basis index split into the lattice path to an intermediate layer and the
/// index inside the irrep at that layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrirIndex {
    pub path: LatticePath,
    pub inner: usize,
}

/// Restriction of the irrep `mu` to `S(m)` acting on `{1..m}`.
pub fn restriction_blocks(mu: &YoungDiagram, m: usize) -> Vec<RestrictionBlock> {
    blocks_of(&OrthogonalIrrep::new(mu), m)
}

/// Restriction blocks of an already constructed irrep.
pub fn blocks_of(irrep: &OrthogonalIrrep, m: usize) -> Vec<RestrictionBlock> {
    let n = irrep.degree();
    assert!(m <= n, "cannot restrict S({n}) to S({m})");
    let mut out: Vec<RestrictionBlock> = Vec::new();
    for (i, t) in irrep.tableaux().iter().enumerate() {
        let path: LatticePath = (m..=n).rev().map(|j| t.restrict(j).diagram().clone()).collect();
        match out.last_mut() {
            Some(b) if b.path == path => b.range.end = i + 1,
            _ => out.push(RestrictionBlock { label: path.last().unwrap().clone(), path, range: i..i + 1 }),
        }
    }
    out
}

/// Splits basis index `i` of `irrep` at layer `m`.
pub fn prir_index(irrep: &OrthogonalIrrep, i: usize, m: usize) -> PrirIndex {
    let block = blocks_of(irrep, m).into_iter().find(|b| b.range.contains(&i)).expect("index within irrep");
    PrirIndex { inner: i - block.range.start, path: block.path }
}

/// Inverse of [`prir_index`].
pub fn prir_position(irrep: &OrthogonalIrrep, index: &PrirIndex) -> Option<usize> {
    let m = index.path.last()?.size();
    blocks_of(irrep, m)
        .into_iter()
        .find(|b| b.path == index.path)
        .filter(|b| index.inner < b.range.len())
        .map(|b| b.range.start + index.inner)
}

/// Which restriction blocks enter the sum rule, as indices into
/// `restriction_blocks(mu, m)` and `restriction_blocks(nu, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SumRuleBlocks {
    pub mu_row: usize,
    pub mu_col: usize,
    pub nu_row: usize,
    pub nu_col: usize,
}

/// Left-hand side of the sum rule,
/// `Σ_τ Σ_k φ^μ(τ⁻¹)[(r,i),(r̃,k)] φ^ν(τ)[(r',k),(r̃',j)]` over right-coset
/// representatives `τ` of `S(n)/S(m)`, as a matrix in `(i, j)`.
pub fn prir_sum(mu: &YoungDiagram, nu: &YoungDiagram, m: usize, blocks: SumRuleBlocks) -> Result<DMatrix<f64>, SymError> {
    let (a, b) = (OrthogonalIrrep::new(mu), OrthogonalIrrep::new(nu));
    let reps = coset_transversal(mu.size(), m);
    let mats = |irrep: &OrthogonalIrrep, inverse: bool| -> Result<Vec<DMatrix<f64>>, SymError> {
        reps.iter().map(|t| irrep.matrix(&if inverse { t.inverse() } else { t.clone() })).collect()
    };
    prir_sum_with(&a, &b, m, blocks, &reps, &mats(&a, true)?, &mats(&b, false)?)
}

fn prir_sum_with(
    a: &OrthogonalIrrep,
    b: &OrthogonalIrrep,
    m: usize,
    blocks: SumRuleBlocks,
    reps: &[Permutation],
    mu_inv: &[DMatrix<f64>],
    nu_fwd: &[DMatrix<f64>],
) -> Result<DMatrix<f64>, SymError> {
    if a.degree() != b.degree() {
        return Err(SymError::DegreeMismatch(a.degree(), b.degree()));
    }
    let (ba, bb) = (blocks_of(a, m), blocks_of(b, m));
    let pick = |v: &[RestrictionBlock], i: usize| {
        v.get(i).cloned().ok_or_else(|| SymError::IncompatibleBlocks(format!("block {i} out of range")))
    };
    let (r, rt) = (pick(&ba, blocks.mu_row)?, pick(&ba, blocks.mu_col)?);
    let (rp, rtp) = (pick(&bb, blocks.nu_row)?, pick(&bb, blocks.nu_col)?);
    if rt.label != rp.label {
        return Err(SymError::IncompatibleBlocks(format!(
            "contracted blocks carry different irreps {} and {}",
            rt.label, rp.label
        )));
    }
    let mut out = DMatrix::zeros(r.range.len(), rtp.range.len());
    for t in 0..reps.len() {
        let x = mu_inv[t].view((r.range.start, rt.range.start), (r.range.len(), rt.range.len()));
        let y = nu_fwd[t].view((rp.range.start, rtp.range.start), (rp.range.len(), rtp.range.len()));
        out += x * y;
    }
    Ok(out)
}

/// Value the sum rule predicts for the same block choice. Derived from the full
/// group orthogonality relation: nonzero only for `μ = ν`, matching contracted
/// paths and matching outer paths, where it is `(n!/m!)(d_β/d_μ)` times the identity.
pub fn prir_sum_expected(mu: &YoungDiagram, nu: &YoungDiagram, m: usize, blocks: SumRuleBlocks) -> Result<DMatrix<f64>, SymError> {
    let (ba, bb) = (restriction_blocks(mu, m), restriction_blocks(nu, m));
    let get = |v: &[RestrictionBlock], i: usize| {
        v.get(i).cloned().ok_or_else(|| SymError::IncompatibleBlocks(format!("block {i} out of range")))
    };
    let (r, rt) = (get(&ba, blocks.mu_row)?, get(&ba, blocks.mu_col)?);
    let (rp, rtp) = (get(&bb, blocks.nu_row)?, get(&bb, blocks.nu_col)?);
    if rt.label != rp.label {
        return Err(SymError::IncompatibleBlocks(format!("{} vs {}", rt.label, rp.label)));
    }
    let mut out = DMatrix::zeros(r.range.len(), rtp.range.len());
    if mu == nu && rt.path == rp.path && r.path == rtp.path {
        let n = mu.size();
        let index: f64 = ((m + 1)..=n).map(|x| x as f64).product();
        let d_mu = ba.last().map(|b| b.range.end).unwrap_or(0) as f64;
        let value = index * rt.range.len() as f64 / d_mu;
        out.fill_diagonal(value);
    }
    Ok(out)
}

/// Largest elementwise deviation between the two sides of the sum rule.
pub fn prir_sum_check(mu: &YoungDiagram, nu: &YoungDiagram, m: usize, blocks: SumRuleBlocks) -> Result<f64, SymError> {
    let lhs = prir_sum(mu, nu, m, blocks)?;
    let rhs = prir_sum_expected(mu, nu, m, blocks)?;
    Ok((lhs - rhs).amax())
}

/// Runs the sum rule for every pair of diagrams of size `n`, subgroup `S(m)`,
/// and every compatible block choice. Returns the worst residual and the
/// number of block combinations checked.
pub fn sum_rule_sweep(n: usize, m: usize) -> (f64, usize) {
    let diagrams = enumerate_diagrams(n, n.max(1));
    let irreps: Vec<OrthogonalIrrep> = diagrams.iter().map(OrthogonalIrrep::new).collect();
    let reps = coset_transversal(n, m);
    let inv: Vec<Vec<DMatrix<f64>>> =
        irreps.iter().map(|ir| reps.iter().map(|t| ir.matrix(&t.inverse()).unwrap()).collect()).collect();
    let fwd: Vec<Vec<DMatrix<f64>>> = irreps.iter().map(|ir| reps.iter().map(|t| ir.matrix(t).unwrap()).collect()).collect();
    let blocks: Vec<Vec<RestrictionBlock>> = irreps.iter().map(|ir| blocks_of(ir, m)).collect();
    let index: f64 = ((m + 1)..=n).map(|x| x as f64).product();
    let mut worst = 0.0f64;
    let mut count = 0;
    for a in 0..irreps.len() {
        for b in 0..irreps.len() {
            let (ba, bb) = (&blocks[a], &blocks[b]);
            for mu_col in 0..ba.len() {
                for nu_row in 0..bb.len() {
                    if ba[mu_col].label != bb[nu_row].label {
                        continue;
                    }
                    for mu_row in 0..ba.len() {
                        for nu_col in 0..bb.len() {
                            let sel = SumRuleBlocks { mu_row, mu_col, nu_row, nu_col };
                            let lhs = prir_sum_with(&irreps[a], &irreps[b], m, sel, &reps, &inv[a], &fwd[b]).unwrap();
                            let mut rhs = DMatrix::zeros(lhs.nrows(), lhs.ncols());
                            if a == b && mu_col == nu_row && mu_row == nu_col {
                                rhs.fill_diagonal(index * ba[mu_col].range.len() as f64 / irreps[a].dim() as f64);
                            }
                            worst = worst.max((lhs - rhs).amax());
                            count += 1;
                        }
                    }
                }
            }
        }
    }
    (worst, count)
}

/// Worst deviation from `Σ_σ φ^μ_ij(σ⁻¹) φ^ν_kl(σ) = (n!/d_μ) δ_μν δ_il δ_jk` over all of `S(n)`.
pub fn schur_orthogonality_residual(n: usize) -> f64 {
    let perms = all_permutations(n);
    let diagrams = enumerate_diagrams(n, n.max(1));
    let irreps: Vec<OrthogonalIrrep> = diagrams.iter().map(OrthogonalIrrep::new).collect();
    let fwd: Vec<Vec<DMatrix<f64>>> = irreps.iter().map(|ir| perms.iter().map(|p| ir.matrix(p).unwrap()).collect()).collect();
    let inv: Vec<Vec<DMatrix<f64>>> =
        irreps.iter().map(|ir| perms.iter().map(|p| ir.matrix(&p.inverse()).unwrap()).collect()).collect();
    let order = perms.len() as f64;
    let mut worst = 0.0f64;
    for a in 0..irreps.len() {
        for b in 0..irreps.len() {
            let (da, db) = (irreps[a].dim(), irreps[b].dim());
            for i in 0..da {
                for j in 0..da {
                    for k in 0..db {
                        for l in 0..db {
                            let s: f64 = (0..perms.len()).map(|t| inv[a][t][(i, j)] * fwd[b][t][(k, l)]).sum();
                            let e = if a == b && i == l && j == k { order / da as f64 } else { 0.0 };
                            worst = worst.max((s - e).abs());
                        }
                    }
                }
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    fn yd(rows: &[usize]) -> YoungDiagram {
        YoungDiagram::new(rows.to_vec()).unwrap()
    }

    #[test]
    fn restriction_examples() {
        let b = restriction_blocks(&yd(&[2, 1]), 2);
        assert_eq!(b.iter().map(|x| x.label.clone()).collect::<Vec<_>>(), vec![yd(&[2]), yd(&[1, 1])]);
        assert_eq!(b.iter().map(|x| x.range.len()).collect::<Vec<_>>(), vec![1, 1]);
        let b = restriction_blocks(&yd(&[4]), 2);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].label, yd(&[2]));
        let b = restriction_blocks(&yd(&[2, 2]), 2);
        assert_eq!(b.iter().map(|x| x.label.clone()).collect::<Vec<_>>(), vec![yd(&[2]), yd(&[1, 1])]);
    }

    #[test]
    fn blocks_reproduce_subgroup_irreps() {
        let mu = yd(&[3, 2, 1]);
        let irrep = OrthogonalIrrep::new(&mu);
        for m in [3, 4, 5] {
            let blocks = blocks_of(&irrep, m);
            for p in all_permutations(m) {
                let full = irrep.matrix(&p.extend(6)).unwrap();
                for x in &blocks {
                    for y in &blocks {
                        let v = full.view((x.range.start, y.range.start), (x.range.len(), y.range.len()));
                        if x.path == y.path {
                            let sub = OrthogonalIrrep::new(&x.label).matrix(&p).unwrap();
                            assert!((v - sub).amax() < 1e-12);
                        } else {
                            assert!(v.amax() < 1e-12);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn one_step_restriction_is_branching() {
        for mu in enumerate_diagrams(6, 6) {
            let mut labels: Vec<YoungDiagram> = restriction_blocks(&mu, 5).into_iter().map(|b| b.label).collect();
            let mut expect = partitions::remove_box(&mu);
            labels.sort();
            expect.sort();
            assert_eq!(labels, expect);
        }
    }

    #[test]
    fn prir_index_roundtrip() {
        let irrep = OrthogonalIrrep::new(&yd(&[3, 2]));
        for m in 0..=5 {
            for i in 0..irrep.dim() {
                let idx = prir_index(&irrep, i, m);
                assert_eq!(idx.path.len(), 5 - m + 1);
                assert_eq!(prir_position(&irrep, &idx), Some(i));
            }
        }
    }

    #[test]
    fn sum_rule_examples() {
        let sel = SumRuleBlocks { mu_row: 0, mu_col: 0, nu_row: 0, nu_col: 0 };
        let lhs = prir_sum(&yd(&[2, 1]), &yd(&[2, 1]), 2, sel).unwrap();
        assert!((lhs[(0, 0)] - 1.5).abs() < 1e-12);
        assert!(prir_sum_check(&yd(&[2, 1]), &yd(&[2, 1]), 2, sel).unwrap() <= 1e-10);
        let off = prir_sum(&yd(&[3]), &yd(&[2, 1]), 2, sel).unwrap();
        assert!(off.amax() < 1e-12);
        for mu_row in 0..2 {
            for mu_col in 0..2 {
                for nu_col in 0..2 {
                    let s = SumRuleBlocks { mu_row, mu_col, nu_row: mu_col, nu_col };
                    assert!(prir_sum_check(&yd(&[2, 2]), &yd(&[2, 2]), 2, s).unwrap() <= 1e-10);
                }
            }
        }
        let bad = SumRuleBlocks { mu_row: 0, mu_col: 0, nu_row: 1, nu_col: 0 };
        assert!(prir_sum_check(&yd(&[2, 1]), &yd(&[2, 1]), 2, bad).is_err());
    }

    #[test]
    fn sum_rule_sweep_small() {
        for n in 2..=4 {
            for m in [n - 1, n - 2] {
                let (worst, count) = sum_rule_sweep(n, m);
                assert!(count > 0);
                assert!(worst <= 1e-10, "n = {n}, m = {m}: {worst}");
            }
        }
    }

    #[test]
    fn schur_orthogonality_small() {
        for n in 1..=4 {
            assert!(schur_orthogonality_residual(n) <= 1e-10);
        }
    }
}
