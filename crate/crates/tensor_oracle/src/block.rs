//! Block-diagonal storage for operators commuting with `U^{⊗m} ⊗ Ū^{⊗(n-m)}`.
//!
//! Such an operator cannot change the weight vector `w_c = #c on sites 1..=m
//! minus #c on sites m+1..=n`, so it is a direct sum over weight sectors.

use std::collections::HashMap;
use std::sync::Arc;

use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::ToPrimitive;
use partitions::{enumerate_diagrams, irrep_dimension, YoungDiagram};
use symgroup::{all_permutations, OrthogonalIrrep, Permutation};

use crate::dense::{digits, require_dim};
use crate::operators::{permute_index, MAX_GROUP_SUM_SITES};
use crate::{DenseOperator, OracleError};

/// Partition of the computational basis into weight sectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    d: usize,
    n: usize,
    split: usize,
    block_of: Vec<usize>,
    local: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl Layout {
    /// Sectors of `(C^d)^{⊗n}` with sites `1..=split` counted positively and the rest negatively.
    pub fn new(d: usize, n: usize, split: usize, max_dim: usize) -> Result<Arc<Self>, OracleError> {
        if split > n {
            return Err(OracleError::InvalidSites(format!("split {split} beyond {n} sites")));
        }
        let dim = require_dim(d, n, max_dim)?;
        let mut keys: HashMap<Vec<i64>, usize> = HashMap::new();
        let mut block_of = Vec::with_capacity(dim);
        let mut local = Vec::with_capacity(dim);
        let mut members: Vec<Vec<usize>> = Vec::new();
        for x in 0..dim {
            let mut w = vec![0i64; d];
            for (s, c) in digits(x, d, n).into_iter().enumerate() {
                w[c] += if s < split { 1 } else { -1 };
            }
            let next = members.len();
            let b = *keys.entry(w).or_insert(next);
            if b == next {
                members.push(Vec::new());
            }
            local.push(members[b].len());
            members[b].push(x);
            block_of.push(b);
        }
        Ok(Arc::new(Self { d, n, split, block_of, local, members }))
    }

    pub fn local_dim(&self) -> usize {
        self.d
    }

    pub fn sites(&self) -> usize {
        self.n
    }

    pub fn split(&self) -> usize {
        self.split
    }

    pub fn dim(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_count(&self) -> usize {
        self.members.len()
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn local(&self, x: usize) -> usize {
        self.local[x]
    }

    /// Global basis indices of a sector, ascending.
    pub fn members(&self, b: usize) -> &[usize] {
        &self.members[b]
    }

    pub fn largest_block(&self) -> usize {
        self.members.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// A real operator stored as one dense matrix per weight sector.
#[derive(Debug, Clone)]
pub struct BlockOperator {
    layout: Arc<Layout>,
    blocks: Vec<DMatrix<f64>>,
}

impl BlockOperator {
    pub fn zeros(layout: &Arc<Layout>) -> Self {
        let blocks = (0..layout.block_count())
            .map(|b| {
                let s = layout.members(b).len();
                DMatrix::zeros(s, s)
            })
            .collect();
        Self { layout: Arc::clone(layout), blocks }
    }

    pub fn identity(layout: &Arc<Layout>) -> Self {
        let mut out = Self::zeros(layout);
        for b in &mut out.blocks {
            b.fill_with_identity();
        }
        out
    }

    pub fn layout(&self) -> &Arc<Layout> {
        &self.layout
    }

    pub fn blocks(&self) -> &[DMatrix<f64>] {
        &self.blocks
    }

    pub fn block(&self, b: usize) -> &DMatrix<f64> {
        &self.blocks[b]
    }

    pub fn block_mut(&mut self, b: usize) -> &mut DMatrix<f64> {
        &mut self.blocks[b]
    }

    pub fn add_entry(&mut self, row: usize, col: usize, value: f64) -> Result<(), OracleError> {
        let b = self.layout.block_of(row);
        if b != self.layout.block_of(col) {
            return Err(OracleError::OffBlock { row, col });
        }
        self.blocks[b][(self.layout.local(row), self.layout.local(col))] += value;
        Ok(())
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        let b = self.layout.block_of(row);
        if b != self.layout.block_of(col) {
            return 0.0;
        }
        self.blocks[b][(self.layout.local(row), self.layout.local(col))]
    }

    fn same_layout(&self, other: &Self) -> Result<(), OracleError> {
        if !Arc::ptr_eq(&self.layout, &other.layout) && self.layout != other.layout {
            return Err(OracleError::Shape("operators on different block layouts".into()));
        }
        Ok(())
    }

    fn zip(&self, other: &Self, f: impl Fn(&DMatrix<f64>, &DMatrix<f64>) -> DMatrix<f64>) -> Result<Self, OracleError> {
        self.same_layout(other)?;
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| f(a, b)).collect();
        Ok(Self { layout: Arc::clone(&self.layout), blocks })
    }

    pub fn add(&self, other: &Self) -> Result<Self, OracleError> {
        self.zip(other, |a, b| a + b)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, OracleError> {
        self.zip(other, |a, b| a * b)
    }

    pub fn scale(&self, c: f64) -> Self {
        Self { layout: Arc::clone(&self.layout), blocks: self.blocks.iter().map(|b| b * c).collect() }
    }

    pub fn add_scaled(&mut self, other: &Self, c: f64) -> Result<(), OracleError> {
        self.same_layout(other)?;
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a += b * c;
        }
        Ok(())
    }

    pub fn trace(&self) -> f64 {
        self.blocks.iter().map(|b| b.trace()).sum()
    }

    /// Largest elementwise deviation.
    pub fn distance(&self, other: &Self) -> Result<f64, OracleError> {
        self.same_layout(other)?;
        Ok(self.blocks.iter().zip(&other.blocks).map(|(a, b)| (a - b).amax()).fold(0.0, f64::max))
    }

    pub fn transpose(&self) -> Self {
        Self { layout: Arc::clone(&self.layout), blocks: self.blocks.iter().map(|b| b.transpose()).collect() }
    }

    /// Eigendecomposition of the symmetric part of every sector.
    pub fn eigen(&self) -> Vec<SymmetricEigen<f64, nalgebra::Dyn>> {
        self.blocks.iter().map(|b| SymmetricEigen::new((b + b.transpose()) * 0.5)).collect()
    }

    /// All eigenvalues of the symmetric part, sector by sector.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.blocks
            .iter()
            .flat_map(|b| ((b + b.transpose()) * 0.5).symmetric_eigenvalues().iter().copied().collect::<Vec<_>>())
            .collect()
    }

    /// Smallest and largest eigenvalue of the symmetric part.
    pub fn eigen_range(&self) -> (f64, f64) {
        self.eigenvalues().into_iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
    }

    pub fn to_dense(&self, max_dim: usize) -> Result<DenseOperator, OracleError> {
        let mut out = DenseOperator::zeros(self.layout.local_dim(), self.layout.sites(), max_dim)?;
        let m = out.matrix_mut();
        for (b, block) in self.blocks.iter().enumerate() {
            let mem = self.layout.members(b);
            for (i, &x) in mem.iter().enumerate() {
                for (j, &y) in mem.iter().enumerate() {
                    m[(x, y)] = block[(i, j)];
                }
            }
        }
        Ok(out)
    }

    /// Splits a dense operator into sectors; entries between sectors must vanish to `tol`.
    pub fn from_dense(layout: &Arc<Layout>, op: &DenseOperator, tol: f64) -> Result<Self, OracleError> {
        if op.local_dim() != layout.local_dim() || op.sites() != layout.sites() {
            return Err(OracleError::Shape("dense operator does not match the layout".into()));
        }
        let mut out = Self::zeros(layout);
        let m = op.matrix();
        for x in 0..layout.dim() {
            for y in 0..layout.dim() {
                let v = m[(x, y)];
                if layout.block_of(x) == layout.block_of(y) {
                    out.add_entry(x, y, v)?;
                } else if v.abs() > tol {
                    return Err(OracleError::OffBlock { row: x, col: y });
                }
            }
        }
        Ok(out)
    }
}

/// All Young projectors `P_μ`, `μ ⊢ m` with at most `d` rows, on a layout whose
/// sites are all counted positively. Up to [`MAX_GROUP_SUM_SITES`] sites they
/// come from the character sum; beyond that from the eigenspaces of the class
/// sum `Σ_{i<j} V_{(i j)}`, which acts on the isotypic component of `μ` as the
/// content sum of `μ`.
pub fn young_projectors(layout: &Arc<Layout>) -> Result<Vec<(YoungDiagram, BlockOperator)>, OracleError> {
    if layout.split() != layout.sites() {
        return Err(OracleError::Shape("Young projectors need a layout without negative sites".into()));
    }
    if layout.sites() <= MAX_GROUP_SUM_SITES {
        projectors_by_characters(layout)
    } else {
        projectors_by_class_sum(layout)
    }
}

fn projectors_by_characters(layout: &Arc<Layout>) -> Result<Vec<(YoungDiagram, BlockOperator)>, OracleError> {
    let (d, m) = (layout.local_dim(), layout.sites());
    let perms = all_permutations(m);
    let images: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| (0..layout.dim()).map(|x| permute_index(p, &digits(x, d, m), d)).collect())
        .collect();
    let mut out = Vec::new();
    for mu in enumerate_diagrams(m, d) {
        let irrep = OrthogonalIrrep::new(&mu);
        let scale = irrep.dim() as f64 / perms.len() as f64;
        let mut p = BlockOperator::zeros(layout);
        for (tau, image) in perms.iter().zip(&images) {
            let c = scale * irrep.character(tau)?;
            if c != 0.0 {
                for (x, &y) in image.iter().enumerate() {
                    p.add_entry(y, x, c)?;
                }
            }
        }
        out.push((mu, p));
    }
    Ok(out)
}

fn projectors_by_class_sum(layout: &Arc<Layout>) -> Result<Vec<(YoungDiagram, BlockOperator)>, OracleError> {
    let (d, m) = (layout.local_dim(), layout.sites());
    let diagrams = enumerate_diagrams(m, d);
    let contents: Vec<i64> = diagrams.iter().map(YoungDiagram::content_sum).collect();
    for a in 0..contents.len() {
        if contents[a + 1..].contains(&contents[a]) {
            return Err(OracleError::SpectralCollision { m, d });
        }
    }
    let mut class_sum = BlockOperator::zeros(layout);
    for i in 1..=m {
        for j in i + 1..=m {
            let swap = Permutation::transposition(m, i, j);
            for x in 0..layout.dim() {
                class_sum.add_entry(permute_index(&swap, &digits(x, d, m), d), x, 1.0)?;
            }
        }
    }
    let mut out: Vec<(YoungDiagram, BlockOperator)> =
        diagrams.iter().map(|mu| (mu.clone(), BlockOperator::zeros(layout))).collect();
    for (b, eig) in class_sum.eigen().into_iter().enumerate() {
        for (c, &value) in eig.eigenvalues.iter().enumerate() {
            let nearest = contents
                .iter()
                .enumerate()
                .min_by(|x, y| (*x.1 as f64 - value).abs().total_cmp(&(*y.1 as f64 - value).abs()))
                .map(|(i, _)| i)
                .expect("at least one diagram");
            if (contents[nearest] as f64 - value).abs() > 1e-6 {
                return Err(OracleError::SpectralCollision { m, d });
            }
            let v = eig.eigenvectors.column(c);
            *out[nearest].1.block_mut(b) += v * v.transpose();
        }
    }
    for (mu, p) in &out {
        let expect = (partitions::sw_multiplicity(mu, d) * irrep_dimension(mu)).to_f64().unwrap_or(f64::NAN);
        if (p.trace() - expect).abs() > 1e-6 {
            return Err(OracleError::SpectralCollision { m, d });
        }
    }
    Ok(out)
}
