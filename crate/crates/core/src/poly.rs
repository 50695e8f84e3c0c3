//! The polynomial module `K[x_1..x_n]` and the operator action on it.
//!
//! The action is the semantics of the whole algebra: `d` differentiates,
//! `int` integrates with zero constant term, `H . x^s = (s+1) x^s`, and the
//! matrix units act as elementary matrices on divided powers. Everything in
//! the rewrite engine can be cross-checked against it.

use std::collections::BTreeMap;

use crate::atom::Atom;
use crate::error::{check_arity, Error, Result};
use crate::operator::{Gen, Operator};
use crate::rational::{factorial_ratio, int_pow, is_zero, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    arity: usize,
    coeffs: BTreeMap<Vec<u32>, Rational>,
}

impl Polynomial {
    pub fn zero(arity: usize) -> Self {
        Polynomial {
            arity,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Polynomial::monomial(arity, vec![0; arity], rat(1))
    }

    pub fn monomial(arity: usize, expo: Vec<u32>, c: Rational) -> Self {
        assert_eq!(expo.len(), arity, "exponent length must match arity");
        let mut p = Polynomial::zero(arity);
        p.add_term(expo, c);
        p
    }

    /// The variable `x_i` (1-based).
    pub fn var(arity: usize, i: usize) -> Result<Self> {
        crate::error::check_index(i, arity)?;
        let mut expo = vec![0; arity];
        expo[i - 1] = 1;
        Ok(Polynomial::monomial(arity, expo, rat(1)))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.coeffs.iter()
    }

    pub fn add_term(&mut self, expo: Vec<u32>, c: Rational) {
        if is_zero(&c) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(expo) {
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

    pub fn add_scale(&self, lambda: &Rational, other: &Polynomial) -> Result<Polynomial> {
        check_arity(self.arity, other.arity)?;
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.add_term(e.clone(), lambda * c);
        }
        Ok(out)
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add_scale(&rat(1), other)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add_scale(&rat(-1), other)
    }

    pub fn scale(&self, lambda: &Rational) -> Polynomial {
        let mut out = Polynomial::zero(self.arity);
        for (e, c) in &self.coeffs {
            out.add_term(e.clone(), lambda * c);
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        check_arity(self.arity, other.arity)?;
        let mut out = Polynomial::zero(self.arity);
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &other.coeffs {
                let expo: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(expo, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.arity);
        for _ in 0..k {
            acc = acc.mul(self).expect("same arity");
        }
        acc
    }

    pub fn max_degree(&self) -> u32 {
        self.coeffs
            .keys()
            .flat_map(|e| e.iter().copied())
            .max()
            .unwrap_or(0)
    }
}

/// Action of a one-coordinate atom on the exponent `s`: returns the image
/// exponent and the scalar factor, or `None` when the term is killed.
fn atom_action(atom: &Atom, s: u32) -> Option<(u32, Rational)> {
    match *atom {
        Atom::Poly { shift, hpow } => {
            // H^hpow first, then v_shift
            let mut c = Rational::from_integer(int_pow(s as i64 + 1, hpow));
            if shift >= 0 {
                // int^shift: x^s -> x^{s+shift} / ((s+1)...(s+shift))
                for t in 1..=shift {
                    c /= rat(s as i64 + t);
                }
                Some((s + shift as u32, c))
            } else {
                let b = (-shift) as u32;
                if s < b {
                    return None;
                }
                // d^b: x^s -> s (s-1) ... (s-b+1) x^{s-b}
                for t in 0..b {
                    c *= rat((s - t) as i64);
                }
                Some((s - b, c))
            }
        }
        Atom::Mat { row, col } => {
            if col == s {
                Some((row, factorial_ratio(s, row)))
            } else {
                None
            }
        }
    }
}

/// Apply an operator to a polynomial: the linear extension of the
/// coordinatewise atom action.
pub fn apply(a: &Operator, p: &Polynomial) -> Result<Polynomial> {
    check_arity(a.arity(), p.arity())?;
    let mut out = Polynomial::zero(p.arity());
    for (m, cm) in a.terms() {
        for (expo, cp) in p.terms() {
            let mut image = Vec::with_capacity(expo.len());
            let mut coef = cm * cp;
            let mut killed = false;
            for (atom, &s) in m.atoms().iter().zip(expo) {
                match atom_action(atom, s) {
                    Some((s2, c)) => {
                        image.push(s2);
                        coef *= c;
                    }
                    None => {
                        killed = true;
                        break;
                    }
                }
            }
            if !killed {
                out.add_term(image, coef);
            }
        }
    }
    Ok(out)
}

/// Action of a single generator on a polynomial, without going through
/// canonical forms. This is the independent route used by the oracles.
pub fn gen_action(g: &Gen, p: &Polynomial) -> Result<Polynomial> {
    let i = g.coord();
    crate::error::check_index(i, p.arity())?;
    let idx = i - 1;
    let mut out = Polynomial::zero(p.arity());
    for (expo, c) in p.terms() {
        let s = expo[idx];
        let mut e = expo.clone();
        match *g {
            Gen::Der(_) => {
                if s == 0 {
                    continue;
                }
                e[idx] = s - 1;
                out.add_term(e, c * rat(s as i64));
            }
            Gen::Int(_) => {
                e[idx] = s + 1;
                out.add_term(e, c / rat(s as i64 + 1));
            }
            Gen::H(_) => {
                out.add_term(e, c * rat(s as i64 + 1));
            }
            Gen::X(_) => {
                e[idx] = s + 1;
                out.add_term(e, c.clone());
            }
        }
    }
    Ok(out)
}

/// The composed action of a word on the monomial `x^beta`, evaluated
/// generator by generator (rightmost acts first).
pub fn word_action(arity: usize, word: &[Gen], beta: &[u32]) -> Result<Polynomial> {
    if beta.len() != arity {
        return Err(Error::VectorLength {
            len: beta.len(),
            arity,
        });
    }
    let mut p = Polynomial::monomial(arity, beta.to_vec(), rat(1));
    for g in word.iter().rev() {
        p = gen_action(g, &p)?;
        if p.is_zero() {
            break;
        }
    }
    Ok(p)
}

/// Returns true iff the composed generator action of `word` annihilates
/// every monomial `x^beta` with `beta_i <= 2 L + 2`.
pub fn zero_oracle(arity: usize, word: &[Gen]) -> Result<bool> {
    let len = word.len();
    if len > 16 || arity > 3 {
        return Err(Error::ResourceGuard(format!(
            "zero_oracle limited to word length 16 and arity 3, got length {len}, arity {arity}"
        )));
    }
    for g in word {
        crate::error::check_index(g.coord(), arity)?;
    }
    let bound = 2 * len as u32 + 2;
    let mut beta = vec![0u32; arity];
    loop {
        if !word_action(arity, word, &beta)?.is_zero() {
            return Ok(false);
        }
        // odometer over exponents 0..=bound
        let mut i = 0;
        loop {
            if i == arity {
                return Ok(true);
            }
            if beta[i] < bound {
                beta[i] += 1;
                break;
            }
            beta[i] = 0;
            i += 1;
        }
    }
}

/// Per-coordinate exponent bound past which a nonzero canonical form must
/// act nontrivially: max matrix column + max H power + max |shift| + 2.
pub fn faithfulness_bound(a: &Operator) -> u32 {
    let mut max_col = 0u32;
    let mut max_hpow = 0u32;
    let mut max_shift = 0u32;
    for (m, _) in a.terms() {
        for atom in m.atoms() {
            match *atom {
                Atom::Poly { shift, hpow } => {
                    max_hpow = max_hpow.max(hpow);
                    max_shift = max_shift.max(shift.unsigned_abs() as u32);
                }
                Atom::Mat { col, .. } => max_col = max_col.max(col),
            }
        }
    }
    max_col + max_hpow + max_shift + 2
}

/// Does `a` annihilate every monomial with exponents `<= bound`?
pub fn action_zero_bounded(a: &Operator, bound: u32) -> bool {
    let arity = a.arity();
    let mut beta = vec![0u32; arity];
    loop {
        let p = Polynomial::monomial(arity, beta.clone(), rat(1));
        if !apply(a, &p).expect("arity matches").is_zero() {
            return false;
        }
        let mut i = 0;
        loop {
            if i == arity {
                return true;
            }
            if beta[i] < bound {
                beta[i] += 1;
                break;
            }
            beta[i] = 0;
            i += 1;
        }
    }
}
