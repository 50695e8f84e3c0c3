//! Exact linear algebra over the rationals: incremental sparse elimination
//! keyed by an arbitrary ordered index type, plus small dense routines for
//! determinants and inverses.

use std::collections::BTreeMap;

use crate::rational::{is_zero, Rational};
use num_traits::Zero;

pub type SparseVec<K> = BTreeMap<K, Rational>;

/// Reduce `vec` against a monic pivot row keyed by its maximal entry.
fn eliminate<K: Ord + Clone>(vec: &mut SparseVec<K>, pivot_key: &K, row: &SparseVec<K>, coef: &Rational) {
    for (k, v) in row {
        let delta = coef * v;
        use std::collections::btree_map::Entry;
        match vec.entry(k.clone()) {
            Entry::Vacant(e) => {
                if !is_zero(&delta) {
                    e.insert(-delta);
                }
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() -= delta;
                if is_zero(e.get()) {
                    e.remove();
                }
            }
        }
    }
    debug_assert!(!vec.contains_key(pivot_key));
}

/// A growing echelon basis of a subspace, used for rank and membership.
#[derive(Debug, Clone, Default)]
pub struct SpanBasis<K: Ord + Clone> {
    /// pivot key -> monic row with that maximal key
    rows: BTreeMap<K, SparseVec<K>>,
}

impl<K: Ord + Clone> SpanBasis<K> {
    pub fn new() -> Self {
        SpanBasis { rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Fully reduce a vector against the basis; the remainder has no pivot
    /// key of the basis as its maximal entry.
    fn reduce(&self, mut vec: SparseVec<K>) -> SparseVec<K> {
        loop {
            match vec.keys().next_back().cloned() {
                None => return vec,
                Some(top) => match self.rows.get(&top) {
                    None => return vec,
                    Some(row) => {
                        let coef = vec[&top].clone();
                        vec.remove(&top);
                        let mut rest = row.clone();
                        rest.remove(&top);
                        eliminate(&mut vec, &top, &rest, &coef);
                    }
                },
            }
        }
    }

    /// Insert a vector; returns true if it enlarged the span.
    pub fn insert(&mut self, vec: SparseVec<K>) -> bool {
        let mut rem = self.reduce(vec);
        match rem.keys().next_back().cloned() {
            None => false,
            Some(top) => {
                let lead = rem[&top].clone();
                for v in rem.values_mut() {
                    *v /= lead.clone();
                }
                self.rows.insert(top, rem);
                true
            }
        }
    }

    /// Is the vector contained in the current span?
    pub fn contains(&self, vec: SparseVec<K>) -> bool {
        self.reduce(vec).is_empty()
    }
}

/// Incremental kernel computation: columns are fed one by one; each linearly
/// dependent column yields a kernel vector of the column space, expressed
/// over the columns inserted so far.
#[derive(Debug, Clone)]
pub struct KernelSolver<K: Ord + Clone> {
    /// pivot key -> (monic column, combination over inserted columns)
    pivots: BTreeMap<K, (SparseVec<K>, BTreeMap<usize, Rational>)>,
    inserted: usize,
}

impl<K: Ord + Clone> Default for KernelSolver<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord + Clone> KernelSolver<K> {
    pub fn new() -> Self {
        KernelSolver {
            pivots: BTreeMap::new(),
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn columns_seen(&self) -> usize {
        self.inserted
    }

    /// Feed one column. `Some(combo)` means the column is dependent and
    /// `sum_j combo[j] * col_j = 0` where `col_j` are the columns inserted so
    /// far (the current column always appears with coefficient 1).
    pub fn insert(&mut self, col: SparseVec<K>) -> Option<BTreeMap<usize, Rational>> {
        let my_index = self.inserted;
        self.inserted += 1;
        let mut vec = col;
        let mut combo: BTreeMap<usize, Rational> = BTreeMap::new();
        combo.insert(my_index, Rational::from_integer(1.into()));
        loop {
            let top = match vec.keys().next_back().cloned() {
                None => {
                    return Some(combo);
                }
                Some(t) => t,
            };
            let Some((row, row_combo)) = self.pivots.get(&top) else {
                // new pivot: normalize to monic
                let lead = vec[&top].clone();
                for v in vec.values_mut() {
                    *v /= lead.clone();
                }
                for v in combo.values_mut() {
                    *v /= lead.clone();
                }
                self.pivots.insert(top, (vec, combo));
                return None;
            };
            let coef = vec[&top].clone();
            vec.remove(&top);
            let mut rest = row.clone();
            rest.remove(&top);
            eliminate(&mut vec, &top, &rest, &coef);
            for (j, v) in row_combo {
                let delta = &coef * v;
                use std::collections::btree_map::Entry;
                match combo.entry(*j) {
                    Entry::Vacant(e) => {
                        if !is_zero(&delta) {
                            e.insert(-delta);
                        }
                    }
                    Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if is_zero(e.get()) {
                            e.remove();
                        }
                    }
                }
            }
        }
    }
}

/// Determinant of a square dense matrix by fraction elimination.
pub fn det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut acc = Rational::from_integer(1.into());
    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !is_zero(&m[r][col]));
        let Some(p) = pivot_row else {
            return Rational::zero();
        };
        if p != col {
            m.swap(p, col);
            acc = -acc;
        }
        let pv = m[col][col].clone();
        acc *= pv.clone();
        let pivot_row_vals: Vec<Rational> = m[col][col..n].to_vec();
        for row in m.iter_mut().skip(col + 1) {
            if is_zero(&row[col]) {
                continue;
            }
            let f = &row[col] / &pv;
            for (offset, pval) in pivot_row_vals.iter().enumerate() {
                let delta = &f * pval;
                row[col + offset] -= delta;
            }
        }
    }
    acc
}

/// Inverse of a square dense matrix via Gauss-Jordan; `None` when singular.
pub fn invert(mat: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = mat.len();
    let mut a: Vec<Vec<Rational>> = mat.to_vec();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::from_integer(1.into())
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !is_zero(&a[r][col]))?;
        a.swap(pivot_row, col);
        inv.swap(pivot_row, col);
        let pv = a[col][col].clone();
        for c in 0..n {
            a[col][c] /= pv.clone();
            inv[col][c] /= pv.clone();
        }
        for r in 0..n {
            if r == col || is_zero(&a[r][col]) {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..n {
                let da = &f * &a[col][c];
                a[r][c] -= da;
                let di = &f * &inv[col][c];
                inv[r][c] -= di;
            }
        }
    }
    Some(inv)
}
