use std::collections::HashMap;
use std::sync::Mutex;

use nalgebra::DMatrix;
use partitions::{enumerate_standard_tableaux, StandardTableau, YoungDiagram};

use crate::{Permutation, SymError};

/// Matrix of one group element in an irrep, indexed by standard tableaux.
#[derive(Debug, Clone, PartialEq)]
pub struct IrrepMatrix {
    pub diagram: YoungDiagram,
    pub entries: DMatrix<f64>,
}

/// Sparse form of an adjacent transposition: a diagonal plus at most one
/// off-diagonal partner per row.
#[derive(Debug, Clone)]
struct Generator {
    diag: Vec<f64>,
    partner: Vec<Option<(usize, f64)>>,
}

/// Young's orthogonal form of the irrep labelled by a diagram, adapted to the
/// chain `S(1) ⊂ S(2) ⊂ ... ⊂ S(n)` where each subgroup fixes the largest points.
///
/// Basis vectors are standard tableaux in last-letter order, so restriction to
/// any `S(m)` is block diagonal on contiguous index ranges. Characters are
/// memoised per cycle type behind a mutex, so a shared instance is safe to use
/// from several threads.
#[derive(Debug)]
pub struct OrthogonalIrrep {
    diagram: YoungDiagram,
    tableaux: Vec<StandardTableau>,
    generators: Vec<Generator>,
    characters: Mutex<HashMap<Vec<usize>, f64>>,
}

impl OrthogonalIrrep {
    pub fn new(diagram: &YoungDiagram) -> Self {
        let tableaux = enumerate_standard_tableaux(diagram);
        let index: HashMap<Vec<usize>, usize> =
            tableaux.iter().enumerate().map(|(i, t)| (t.rows_of_entries().to_vec(), i)).collect();
        let n = diagram.size();
        let mut generators = Vec::with_capacity(n.saturating_sub(1));
        for i in 1..n {
            let mut diag = Vec::with_capacity(tableaux.len());
            let mut partner = Vec::with_capacity(tableaux.len());
            for t in &tableaux {
                let r = (t.content(i + 1) - t.content(i)) as f64;
                diag.push(1.0 / r);
                let mut swapped = t.rows_of_entries().to_vec();
                swapped.swap(i - 1, i);
                partner.push(index.get(&swapped).map(|&j| (j, (1.0 - 1.0 / (r * r)).sqrt())));
            }
            generators.push(Generator { diag, partner });
        }
        Self { diagram: diagram.clone(), tableaux, generators, characters: Mutex::new(HashMap::new()) }
    }

    pub fn diagram(&self) -> &YoungDiagram {
        &self.diagram
    }

    pub fn dim(&self) -> usize {
        self.tableaux.len()
    }

    pub fn degree(&self) -> usize {
        self.diagram.size()
    }

    pub fn tableaux(&self) -> &[StandardTableau] {
        &self.tableaux
    }

    /// Replaces `m` by `φ(s_i) m`.
    fn left_apply(&self, i: usize, m: &mut DMatrix<f64>) {
        let g = &self.generators[i - 1];
        let old = m.clone();
        for a in 0..self.dim() {
            let mut row = old.row(a) * g.diag[a];
            if let Some((b, c)) = g.partner[a] {
                row += old.row(b) * c;
            }
            m.set_row(a, &row);
        }
    }

    /// Matrix of `p`, built from its adjacent-transposition factorization.
    pub fn matrix(&self, p: &Permutation) -> Result<DMatrix<f64>, SymError> {
        if p.degree() != self.degree() {
            return Err(SymError::DegreeMismatch(self.degree(), p.degree()));
        }
        let mut m = DMatrix::identity(self.dim(), self.dim());
        for i in p.adjacent_factors() {
            self.left_apply(i, &mut m);
        }
        Ok(m)
    }

    /// Matrix of the adjacent transposition `(i i+1)`.
    pub fn generator_matrix(&self, i: usize) -> DMatrix<f64> {
        let mut m = DMatrix::identity(self.dim(), self.dim());
        self.left_apply(i, &mut m);
        m
    }

    /// Character value, cached by cycle type.
    pub fn character(&self, p: &Permutation) -> Result<f64, SymError> {
        if p.degree() != self.degree() {
            return Err(SymError::DegreeMismatch(self.degree(), p.degree()));
        }
        let ct = p.cycle_type();
        if let Some(&c) = self.characters.lock().unwrap().get(&ct) {
            return Ok(c);
        }
        let c = self.matrix(&representative(&ct))?.trace();
        self.characters.lock().unwrap().insert(ct, c);
        Ok(c)
    }
}

/// A permutation with the given cycle type, cycles on consecutive points.
fn representative(cycle_type: &[usize]) -> Permutation {
    let n: usize = cycle_type.iter().sum();
    let mut images = vec![0usize; n];
    let mut start = 0;
    for &len in cycle_type {
        for j in 0..len {
            images[start + j] = start + (j + 1) % len + 1;
        }
        start += len;
    }
    Permutation::from_one_line(&images).expect("cycles form a permutation")
}

/// Matrix of `p` in Young's orthogonal form for `mu`.
pub fn young_orthogonal_rep(mu: &YoungDiagram, p: &Permutation) -> Result<IrrepMatrix, SymError> {
    if mu.size() != p.degree() {
        return Err(SymError::DegreeMismatch(mu.size(), p.degree()));
    }
    let entries = OrthogonalIrrep::new(mu).matrix(p)?;
    Ok(IrrepMatrix { diagram: mu.clone(), entries })
}
