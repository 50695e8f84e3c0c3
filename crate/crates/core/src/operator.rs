//! Operators in canonical form and the arithmetic on them.
//!
//! An [`Operator`] is a finite rational-linear combination of basis
//! monomials; a [`Monomial`] is one atom per tensor coordinate. Two
//! operators are equal exactly when their term maps are equal — this is the
//! uniqueness of the canonical form, and the whole test suite leans on it.

use std::collections::BTreeMap;

use crate::atom::{atom_mul, Atom};
use crate::error::{check_arity, check_index, Result};
use crate::rational::{is_zero, rat, Rational};
use num_traits::Zero;

/// A canonical basis monomial: one atom per coordinate.
///
/// The derived order (coordinate-major, `Poly` before `Mat`, then the
/// numeric fields) is the fixed printing order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<Atom>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![Atom::ONE; arity])
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(Atom::is_identity)
    }

    /// Degree vector in the multi-grading.
    pub fn degree(&self) -> Vec<i64> {
        self.0.iter().map(Atom::degree).collect()
    }

    /// Bitmask of the coordinates carrying a matrix-unit atom.
    pub fn mat_mask(&self) -> u16 {
        let mut mask = 0u16;
        for (i, a) in self.0.iter().enumerate() {
            if a.is_mat() {
                mask |= 1 << i;
            }
        }
        mask
    }
}

/// Generators accepted by [`from_word`]; coordinates are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gen {
    X(usize),
    Der(usize),
    Int(usize),
    H(usize),
}

impl Gen {
    pub fn coord(&self) -> usize {
        match *self {
            Gen::X(i) | Gen::Der(i) | Gen::Int(i) | Gen::H(i) => i,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Operator {
    arity: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Operator {
    pub fn zero(arity: usize) -> Self {
        Operator {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Operator::scalar(arity, rat(1))
    }

    pub fn scalar(arity: usize, c: Rational) -> Self {
        let mut op = Operator::zero(arity);
        op.add_term(Monomial::one(arity), c);
        op
    }

    /// A single monomial with the given atom in coordinate `i` (1-based).
    pub fn from_atom(arity: usize, i: usize, atom: Atom) -> Result<Self> {
        check_index(i, arity)?;
        let mut atoms = vec![Atom::ONE; arity];
        atoms[i - 1] = atom;
        let mut op = Operator::zero(arity);
        op.add_term(Monomial(atoms), rat(1));
        Ok(op)
    }

    pub fn der(arity: usize, i: usize) -> Result<Self> {
        Operator::from_atom(arity, i, Atom::Poly { shift: -1, hpow: 0 })
    }

    pub fn integ(arity: usize, i: usize) -> Result<Self> {
        Operator::from_atom(arity, i, Atom::Poly { shift: 1, hpow: 0 })
    }

    pub fn h(arity: usize, i: usize) -> Result<Self> {
        Operator::from_atom(arity, i, Atom::Poly { shift: 0, hpow: 1 })
    }

    /// `x_i = int_i H_i` is itself a basis atom.
    pub fn x(arity: usize, i: usize) -> Result<Self> {
        Operator::from_atom(arity, i, Atom::Poly { shift: 1, hpow: 1 })
    }

    /// The matrix unit `e_{s,t}` in coordinate `i`.
    pub fn mat_unit(arity: usize, i: usize, s: u32, t: u32) -> Result<Self> {
        Operator::from_atom(arity, i, Atom::Mat { row: s, col: t })
    }

    /// The rescaled unit `E_{s,t} = (s!/t!) e_{s,t}`, which acts as an
    /// elementary matrix on plain monomials: `E_{s,t} x^u = delta_{t,u} x^s`.
    pub fn elementary_unit(arity: usize, i: usize, s: u32, t: u32) -> Result<Self> {
        Ok(Operator::mat_unit(arity, i, s, t)?.scale(&crate::rational::factorial_ratio(s, t)))
    }

    pub fn from_terms(
        arity: usize,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Result<Self> {
        let mut op = Operator::zero(arity);
        for (m, c) in terms {
            check_arity(m.arity(), arity)?;
            op.add_term(m, c);
        }
        Ok(op)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if is_zero(&c) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
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

    /// `self + lambda * other`, pruned of zero coefficients.
    pub fn add_scale(&self, lambda: &Rational, other: &Operator) -> Result<Operator> {
        check_arity(self.arity, other.arity)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), lambda * c);
        }
        Ok(out)
    }

    pub fn add(&self, other: &Operator) -> Result<Operator> {
        self.add_scale(&rat(1), other)
    }

    pub fn sub(&self, other: &Operator) -> Result<Operator> {
        self.add_scale(&rat(-1), other)
    }

    pub fn neg(&self) -> Operator {
        self.scale(&rat(-1))
    }

    pub fn scale(&self, lambda: &Rational) -> Operator {
        if is_zero(lambda) {
            return Operator::zero(self.arity);
        }
        let mut out = Operator::zero(self.arity);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), lambda * c);
        }
        out
    }

    /// Product in canonical form. Coordinates multiply independently; the
    /// per-coordinate expansions are recombined as a tensor product.
    pub fn mul(&self, other: &Operator) -> Result<Operator> {
        check_arity(self.arity, other.arity)?;
        let mut out = Operator::zero(self.arity);
        for (ml, cl) in &self.terms {
            for (mr, cr) in &other.terms {
                let base = cl * cr;
                // partial[j] = list of (atom prefix, coefficient) for coords 0..j
                let mut partial: Vec<(Vec<Atom>, Rational)> = vec![(Vec::new(), base)];
                for i in 0..self.arity {
                    let expansion = atom_mul(&ml.0[i], &mr.0[i]);
                    if expansion.is_empty() {
                        partial.clear();
                        break;
                    }
                    let mut next = Vec::with_capacity(partial.len() * expansion.len());
                    for (prefix, pc) in &partial {
                        for (atom, ac) in &expansion {
                            let mut atoms = prefix.clone();
                            atoms.push(*atom);
                            next.push((atoms, pc * ac));
                        }
                    }
                    partial = next;
                }
                for (atoms, c) in partial {
                    out.add_term(Monomial(atoms), c);
                }
            }
        }
        Ok(out)
    }

    /// `self^k` by repeated multiplication.
    pub fn pow(&self, k: u32) -> Operator {
        let mut acc = Operator::one(self.arity);
        for _ in 0..k {
            acc = acc.mul(self).expect("same arity");
        }
        acc
    }

    /// The involution `*`: an anti-automorphism fixing `H_i` and swapping
    /// `d_i` with `int_i`. Distinct coordinates commute, so it acts
    /// atom-by-atom on monomials.
    pub fn involution(&self) -> Operator {
        let mut out = Operator::zero(self.arity);
        for (m, c) in &self.terms {
            let mut partial: Vec<(Vec<Atom>, Rational)> = vec![(Vec::new(), c.clone())];
            for atom in &m.0 {
                let expansion = atom.star();
                let mut next = Vec::with_capacity(partial.len() * expansion.len());
                for (prefix, pc) in &partial {
                    for (a, ac) in &expansion {
                        let mut atoms = prefix.clone();
                        atoms.push(*a);
                        next.push((atoms, pc * ac));
                    }
                }
                partial = next;
            }
            for (atoms, c) in partial {
                out.add_term(Monomial(atoms), c);
            }
        }
        out
    }

    /// `sigma_i(a) = int_i a d_i`.
    pub fn sigma(&self, i: usize) -> Result<Operator> {
        check_index(i, self.arity)?;
        let int_i = Operator::integ(self.arity, i)?;
        let der_i = Operator::der(self.arity, i)?;
        int_i.mul(self)?.mul(&der_i)
    }

    /// `tau_i(a) = d_i a int_i`.
    pub fn tau(&self, i: usize) -> Result<Operator> {
        check_index(i, self.arity)?;
        let int_i = Operator::integ(self.arity, i)?;
        let der_i = Operator::der(self.arity, i)?;
        der_i.mul(self)?.mul(&int_i)
    }

    /// Split into graded components; the keys are degree vectors and the
    /// components sum back to `self`.
    pub fn grade_decompose(&self) -> BTreeMap<Vec<i64>, Operator> {
        let mut out: BTreeMap<Vec<i64>, Operator> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| Operator::zero(self.arity))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// Largest numeric index appearing in any atom (shift magnitude, H power,
    /// matrix row/column). Zero for the zero operator.
    pub fn max_index(&self) -> u32 {
        let mut b = 0u32;
        for m in self.terms.keys() {
            for a in &m.0 {
                match *a {
                    Atom::Poly { shift, hpow } => {
                        b = b.max(shift.unsigned_abs() as u32).max(hpow);
                    }
                    Atom::Mat { row, col } => {
                        b = b.max(row).max(col);
                    }
                }
            }
        }
        b
    }
}

/// Canonical form of a product of generators, folded left to right.
pub fn from_word(arity: usize, word: &[Gen]) -> Result<Operator> {
    let mut acc = Operator::one(arity);
    for g in word {
        let factor = match *g {
            Gen::X(i) => Operator::x(arity, i)?,
            Gen::Der(i) => Operator::der(arity, i)?,
            Gen::Int(i) => Operator::integ(arity, i)?,
            Gen::H(i) => Operator::h(arity, i)?,
        };
        acc = acc.mul(&factor)?;
    }
    Ok(acc)
}
