//! Bounded-support linear characterizations: kernels of operator-valued
//! linear maps over the span of all canonical monomials with indices up to a
//! bound. These back the annihilator, centre, and chain-of-ideals checks.

use std::collections::BTreeMap;

use crate::atom::Atom;
use crate::error::{Error, Result};
use crate::linalg::{KernelSolver, SpanBasis, SparseVec};
use crate::operator::{Monomial, Operator};
use crate::rational::rat;

/// An operator-valued linear constraint.
pub type OperatorMap<'a> = &'a dyn Fn(&Operator) -> Result<Operator>;

/// Every atom with |shift| <= bound, hpow <= bound, row/col <= bound.
fn bounded_atoms(bound: u32) -> Vec<Atom> {
    let mut atoms = Vec::new();
    for shift in -(bound as i64)..=(bound as i64) {
        for hpow in 0..=bound {
            atoms.push(Atom::Poly { shift, hpow });
        }
    }
    for row in 0..=bound {
        for col in 0..=bound {
            atoms.push(Atom::Mat { row, col });
        }
    }
    atoms
}

/// Every canonical monomial of the given arity with all indices `<= bound`.
pub fn bounded_monomials(arity: usize, bound: u32) -> Result<Vec<Monomial>> {
    let atoms = bounded_atoms(bound);
    let total = atoms.len().checked_pow(arity as u32).unwrap_or(usize::MAX);
    if total > 200_000 {
        return Err(Error::ResourceGuard(format!(
            "bounded monomial set would have {total} elements"
        )));
    }
    let mut out: Vec<Vec<Atom>> = vec![vec![]];
    for _ in 0..arity {
        let mut next = Vec::with_capacity(out.len() * atoms.len());
        for prefix in &out {
            for a in &atoms {
                let mut p = prefix.clone();
                p.push(*a);
                next.push(p);
            }
        }
        out = next;
    }
    Ok(out.into_iter().map(Monomial).collect())
}

/// Key for stacking several constraint maps into one column space. Higher
/// constraint ranks win the pivot choice, which keeps the eigen-type
/// constraints (commutators with `H_i`) from causing fill-in.
type StackKey = (u8, Monomial);

fn operator_column(rank_and_ops: &[(u8, Operator)]) -> SparseVec<StackKey> {
    let mut col: SparseVec<StackKey> = BTreeMap::new();
    for (rank, op) in rank_and_ops {
        for (m, c) in op.terms() {
            col.insert((*rank, m.clone()), c.clone());
        }
    }
    col
}

/// Kernel of the stacked maps on the span of `unknowns`: returns a basis of
/// `{ z : maps[j](z) = 0 for all j }` as operators.
pub fn kernel_of_maps(
    arity: usize,
    unknowns: &[Monomial],
    maps: &[OperatorMap<'_>],
) -> Result<Vec<Operator>> {
    let mut solver: KernelSolver<StackKey> = KernelSolver::new();
    let mut kernel: Vec<Operator> = Vec::new();
    for (idx, m) in unknowns.iter().enumerate() {
        let z = Operator::from_terms(arity, [(m.clone(), rat(1))])?;
        let mut images: Vec<(u8, Operator)> = Vec::with_capacity(maps.len());
        for (j, f) in maps.iter().enumerate() {
            images.push((j as u8, f(&z)?));
        }
        if let Some(combo) = solver.insert(operator_column(&images)) {
            let mut op = Operator::zero(arity);
            for (j, c) in combo {
                debug_assert!(j <= idx);
                op = op.add_scale(&c, &Operator::from_terms(arity, [(unknowns[j].clone(), rat(1))])?)?;
            }
            kernel.push(op);
        }
    }
    Ok(kernel)
}

/// Basis of `{ a in bounded span : a * right = 0 }`.
pub fn left_annihilator_basis(arity: usize, bound: u32, right: &Operator) -> Result<Vec<Operator>> {
    let unknowns = bounded_monomials(arity, bound)?;
    let mul_right = |z: &Operator| z.mul(right);
    kernel_of_maps(arity, &unknowns, &[&mul_right])
}

/// Basis of the bounded-support solutions of
/// `[z, d_i] = [z, int_i] = [z, H_i] = 0` for every coordinate.
///
/// The commutator maps are homogeneous for the multi-grading, so the kernel
/// splits as a direct sum over degree vectors; each graded block is solved
/// by exact elimination. In particular `[z, H_i]` scales a monomial of
/// degree `alpha` by `-alpha_i`, which settles every block of nonzero
/// degree almost for free.
pub fn centre_basis(arity: usize, bound: u32) -> Result<Vec<Operator>> {
    let unknowns = bounded_monomials(arity, bound)?;
    let mut blocks: BTreeMap<Vec<i64>, Vec<Monomial>> = BTreeMap::new();
    for m in unknowns {
        blocks.entry(m.degree()).or_default().push(m);
    }
    // The H commutators go last: constraint ranks grow along this list and
    // the solver pivots on the highest rank, so a block of nonzero degree
    // pivots on its private eigen-row.
    let mut gens: Vec<Operator> = Vec::new();
    for i in 1..=arity {
        gens.push(Operator::der(arity, i)?);
        gens.push(Operator::integ(arity, i)?);
    }
    for i in 1..=arity {
        gens.push(Operator::h(arity, i)?);
    }
    let mut kernel = Vec::new();
    for block in blocks.values() {
        type BoxedMap = Box<dyn Fn(&Operator) -> Result<Operator>>;
        let commutators: Vec<BoxedMap> = gens
            .iter()
            .cloned()
            .map(|g| {
                Box::new(move |z: &Operator| z.mul(&g)?.sub(&g.mul(z)?)) as BoxedMap
            })
            .collect();
        let refs: Vec<OperatorMap<'_>> =
            commutators.iter().map(|b| b.as_ref() as _).collect();
        kernel.extend(kernel_of_maps(arity, block, &refs)?);
    }
    Ok(kernel)
}

/// Is `target` in the bounded-support left ideal generated by `gens`, i.e.
/// in the span of `m * g` over bounded monomials `m` and generators `g`?
pub fn in_left_ideal_bounded(target: &Operator, gens: &[Operator], bound: u32) -> Result<bool> {
    let arity = target.arity();
    let monomials = bounded_monomials(arity, bound)?;
    let mut span: SpanBasis<Monomial> = SpanBasis::new();
    for m in &monomials {
        let base = Operator::from_terms(arity, [(m.clone(), rat(1))])?;
        for g in gens {
            let prod = base.mul(g)?;
            if !prod.is_zero() {
                span.insert(prod.terms().map(|(k, c)| (k.clone(), c.clone())).collect());
            }
        }
    }
    Ok(span.contains(
        target
            .terms()
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect(),
    ))
}
