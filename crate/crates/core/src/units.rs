//! Unit recognition and inversion.
//!
//! Units project to nonzero scalars in the skew Laurent quotient; that test
//! is necessary in every arity. Candidates of the shape `lambda + f` with
//! `f` a finite matrix are then decided completely by the stable determinant
//! of `1 + f/lambda` over the support box, and inverted by exact Gaussian
//! elimination. In arity one this covers every candidate, so the decision is
//! complete; in higher arity everything else is reported as `Unknown`.

use std::collections::BTreeMap;

use crate::atom::Atom;
use crate::bn::project_bn;
use crate::error::{Error, Result};
use crate::linalg;
use crate::operator::{Monomial, Operator};
use crate::poly::{apply, Polynomial};
use crate::rational::{factorial_ratio, is_zero, rat, Rational};
use num_traits::Zero;

/// Box side limit: determinants are taken over `(B+1)^n` flattened indices.
const MAX_BOX_CELLS: usize = 4096;

/// An element of the finite-matrix ideal, stored as honest matrix entries
/// over multi-indexed rows and columns (divided-power basis).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMatrixPart {
    arity: usize,
    entries: BTreeMap<(Vec<u32>, Vec<u32>), Rational>,
}

impl FiniteMatrixPart {
    pub fn zero(arity: usize) -> Self {
        FiniteMatrixPart {
            arity,
            entries: BTreeMap::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(Vec<u32>, Vec<u32>), &Rational)> {
        self.entries.iter()
    }

    pub fn entry(&self, row: &[u32], col: &[u32]) -> Rational {
        self.entries
            .get(&(row.to_vec(), col.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn add_entry(&mut self, row: Vec<u32>, col: Vec<u32>, c: Rational) {
        if is_zero(&c) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.entries.entry((row, col)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if is_zero(e.get()) {
                    e.remove();
                }
            }
        }
    }

    /// Largest index appearing in any row or column.
    pub fn support_bound(&self) -> u32 {
        self.entries
            .keys()
            .flat_map(|(r, c)| r.iter().chain(c).copied())
            .max()
            .unwrap_or(0)
    }

    /// Back to an operator: each entry is a matrix unit scaled by the
    /// basis-change factor row!/col!.
    pub fn to_operator(&self) -> Operator {
        let mut out = Operator::zero(self.arity);
        for ((row, col), c) in &self.entries {
            let mut atoms = Vec::with_capacity(self.arity);
            let mut scale = c.clone();
            for i in 0..self.arity {
                atoms.push(Atom::Mat {
                    row: row[i],
                    col: col[i],
                });
                scale *= factorial_ratio(row[i], col[i]);
            }
            out.add_term(Monomial(atoms), scale);
        }
        out
    }
}

/// Split an operator as `lambda * 1 + f` with `f` in the finite-matrix
/// ideal. Succeeds iff every monomial is the identity or all-matrix; the
/// matrix-unit coefficients are converted to genuine matrix entries
/// (`e_{row,col} = col!/row! E_{row,col}` per coordinate).
pub fn split_scalar_plus_f(a: &Operator) -> Option<(Rational, FiniteMatrixPart)> {
    let n = a.arity();
    let mut lambda = Rational::zero();
    let mut f = FiniteMatrixPart::zero(n);
    for (m, c) in a.terms() {
        if m.is_identity() {
            lambda = c.clone();
            continue;
        }
        let mut row = Vec::with_capacity(n);
        let mut col = Vec::with_capacity(n);
        let mut scale = c.clone();
        for atom in m.atoms() {
            match *atom {
                Atom::Mat { row: s, col: t } => {
                    row.push(s);
                    col.push(t);
                    scale *= factorial_ratio(t, s);
                }
                Atom::Poly { .. } => return None,
            }
        }
        f.add_entry(row, col, scale);
    }
    Some((lambda, f))
}

/// Flattened index list of the box `[0,B]^n`, lexicographic.
fn box_indices(arity: usize, b: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..arity {
        let mut next = Vec::with_capacity(out.len() * (b as usize + 1));
        for prefix in &out {
            for v in 0..=b {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

type BoxMatrix = (Vec<Vec<u32>>, Vec<Vec<Rational>>);

fn box_matrix(f: &FiniteMatrixPart, lambda: &Rational) -> Result<BoxMatrix> {
    let b = f.support_bound();
    let cells = (b as usize + 1)
        .checked_pow(f.arity() as u32)
        .unwrap_or(usize::MAX);
    if cells > MAX_BOX_CELLS {
        return Err(Error::ResourceGuard(format!(
            "determinant box has {cells} cells (limit {MAX_BOX_CELLS})"
        )));
    }
    let idx = box_indices(f.arity(), b);
    let m: Vec<Vec<Rational>> = idx
        .iter()
        .map(|r| {
            idx.iter()
                .map(|c| {
                    let mut v = f.entry(r, c) / lambda;
                    if r == c {
                        v += rat(1);
                    }
                    v
                })
                .collect()
        })
        .collect();
    Ok((idx, m))
}

/// The stable determinant `det(1 + f/lambda)`: every large enough principal
/// block of `1 + f/lambda` has this determinant, and it vanishes exactly
/// when `lambda + f` fails to be a unit.
pub fn global_det(lambda: &Rational, f: &FiniteMatrixPart) -> Result<Rational> {
    if is_zero(lambda) {
        return Err(Error::Domain("global determinant needs lambda != 0".into()));
    }
    let (_, m) = box_matrix(f, lambda)?;
    Ok(linalg::det(m))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnitDecision {
    Yes(Operator),
    No,
    Unknown,
}

/// Decide invertibility.
///
/// Step 1 (all arities): the image in the quotient must be a nonzero
/// scalar — units map onto the scalars there. Step 2: a candidate of shape
/// `lambda + f` is decided by the determinant and, when invertible, its
/// inverse `lambda^{-1} + g` is computed over the support box and verified
/// by two-sided multiplication. In arity one every candidate that survives
/// step 1 has this shape, so the procedure is complete; for higher arity
/// the remaining candidates return `Unknown`.
pub fn is_unit(a: &Operator) -> Result<UnitDecision> {
    let lambda = match project_bn(a).as_nonzero_scalar() {
        None => return Ok(UnitDecision::No),
        Some(l) => l,
    };
    let Some((l2, f)) = split_scalar_plus_f(a) else {
        return Ok(UnitDecision::Unknown);
    };
    debug_assert_eq!(lambda, l2);
    let (idx, m) = box_matrix(&f, &lambda)?;
    let Some(inv) = linalg::invert(&m) else {
        return Ok(UnitDecision::No);
    };
    // (1 + f/lambda)^{-1} = 1 + g  =>  a^{-1} = lambda^{-1} (1 + g)
    let mut g = FiniteMatrixPart::zero(a.arity());
    for (ri, r) in idx.iter().enumerate() {
        for (ci, c) in idx.iter().enumerate() {
            let mut v = inv[ri][ci].clone();
            if ri == ci {
                v -= rat(1);
            }
            g.add_entry(r.clone(), c.clone(), v);
        }
    }
    let linv = lambda.recip();
    let inverse = Operator::scalar(a.arity(), linv.clone())
        .add(&g.to_operator().scale(&linv))
        .expect("same arity");
    let left = inverse.mul(a)?;
    let right = a.mul(&inverse)?;
    if left != Operator::one(a.arity()) || right != Operator::one(a.arity()) {
        return Err(Error::Internal(
            "computed inverse failed two-sided verification".into(),
        ));
    }
    Ok(UnitDecision::Yes(inverse))
}

/// Independent invertibility oracle for arity one: the operator acts on the
/// span of `x^0..x^B`; for `lambda + f` with support inside the box this
/// block determines invertibility (outside it the action is `lambda`).
pub fn action_matrix_invertible(a: &Operator, bound: u32) -> Result<bool> {
    if a.arity() != 1 {
        return Err(Error::Domain(
            "action-matrix oracle is defined for arity 1".into(),
        ));
    }
    let dim = bound as usize + 1;
    let mut m = vec![vec![Rational::zero(); dim]; dim];
    #[allow(clippy::needless_range_loop)]
    for s in 0..dim {
        let p = Polynomial::monomial(1, vec![s as u32], rat(1));
        let image = apply(a, &p)?;
        for (expo, c) in image.terms() {
            let d = expo[0] as usize;
            if d < dim {
                m[d][s] = c.clone();
            } else {
                // image escapes the box: not a lambda + f candidate
                return Err(Error::Domain(
                    "operator does not stabilize the box".into(),
                ));
            }
        }
    }
    Ok(!is_zero(&linalg::det(m)))
}
