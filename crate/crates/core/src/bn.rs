//! The Noetherian quotient by the largest proper ideal, presented as a skew
//! Laurent polynomial algebra: basis `H^k d^alpha` with `alpha` in `Z^n`, the
//! coefficient polynomial stored on the left, and the commutation rule
//! `d^alpha H = (H + alpha) d^alpha`.

use std::collections::BTreeMap;

use crate::error::{check_arity, check_index, Result};
use crate::operator::Operator;
use crate::rational::{binomial, int_pow, is_zero, rat, Rational};
use num_traits::Zero;

/// `(hpows, shifts)` encodes the basis element `H^hpows d^shifts`.
pub type BnKey = (Vec<u32>, Vec<i64>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BnElement {
    arity: usize,
    terms: BTreeMap<BnKey, Rational>,
}

impl BnElement {
    pub fn zero(arity: usize) -> Self {
        BnElement {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        BnElement::scalar(arity, rat(1))
    }

    pub fn scalar(arity: usize, c: Rational) -> Self {
        let mut e = BnElement::zero(arity);
        e.add_term((vec![0; arity], vec![0; arity]), c);
        e
    }

    /// `d_i^exp` (any integer exponent; negative powers are the image of
    /// integration).
    pub fn der_pow(arity: usize, i: usize, exp: i64) -> Result<Self> {
        check_index(i, arity)?;
        let mut shifts = vec![0i64; arity];
        shifts[i - 1] = exp;
        let mut e = BnElement::zero(arity);
        e.add_term((vec![0; arity], shifts), rat(1));
        Ok(e)
    }

    pub fn h_pow(arity: usize, i: usize, k: u32) -> Result<Self> {
        check_index(i, arity)?;
        let mut hpows = vec![0u32; arity];
        hpows[i - 1] = k;
        let mut e = BnElement::zero(arity);
        e.add_term((hpows, vec![0; arity]), rat(1));
        Ok(e)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BnKey, &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, key: BnKey, c: Rational) {
        if is_zero(&c) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
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

    pub fn add_scale(&self, lambda: &Rational, other: &BnElement) -> Result<BnElement> {
        check_arity(self.arity, other.arity)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), lambda * c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &BnElement) -> Result<BnElement> {
        self.add_scale(&rat(-1), other)
    }

    /// Skew Laurent product:
    /// `H^k d^alpha . H^m d^beta = H^k prod_i (H_i + alpha_i)^{m_i} d^{alpha+beta}`.
    pub fn mul(&self, other: &BnElement) -> Result<BnElement> {
        check_arity(self.arity, other.arity)?;
        let n = self.arity;
        let mut out = BnElement::zero(n);
        for ((k, alpha), cl) in &self.terms {
            for ((m, beta), cr) in &other.terms {
                let shifts: Vec<i64> = alpha.iter().zip(beta).map(|(a, b)| a + b).collect();
                // expand prod_i H_i^{k_i} (H_i + alpha_i)^{m_i}
                let mut partial: Vec<(Vec<u32>, Rational)> = vec![(Vec::new(), cl * cr)];
                for i in 0..n {
                    let mut next = Vec::new();
                    for j in 0..=m[i] {
                        let b = binomial(m[i], j) * int_pow(alpha[i], m[i] - j);
                        if b.is_zero() {
                            continue;
                        }
                        let coef = Rational::from_integer(b);
                        for (prefix, pc) in &partial {
                            let mut hp = prefix.clone();
                            hp.push(k[i] + j);
                            next.push((hp, pc * &coef));
                        }
                    }
                    partial = next;
                }
                for (hp, c) in partial {
                    out.add_term((hp, shifts.clone()), c);
                }
            }
        }
        Ok(out)
    }

    /// The inherited involution: `H` fixed, `d -> d^{-1}`, reversed products.
    /// On a basis element, `(H^k d^alpha)^* = d^{-alpha} H^k`, normalized
    /// back to coefficient-left form.
    pub fn star(&self) -> BnElement {
        let n = self.arity;
        let mut out = BnElement::zero(n);
        for ((k, alpha), c) in &self.terms {
            let shifts: Vec<i64> = alpha.iter().map(|a| -a).collect();
            // d^{-alpha} H^k = prod_i (H_i - alpha_i)^{k_i} d^{-alpha}
            let mut partial: Vec<(Vec<u32>, Rational)> = vec![(Vec::new(), c.clone())];
            for i in 0..n {
                let mut next = Vec::new();
                for j in 0..=k[i] {
                    let b = binomial(k[i], j) * int_pow(-alpha[i], k[i] - j);
                    if b.is_zero() {
                        continue;
                    }
                    let coef = Rational::from_integer(b);
                    for (prefix, pc) in &partial {
                        let mut hp = prefix.clone();
                        hp.push(j);
                        next.push((hp, pc * &coef));
                    }
                }
                partial = next;
            }
            for (hp, cc) in partial {
                out.add_term((hp, shifts.clone()), cc);
            }
        }
        out
    }

    /// Recognize a unit: exactly the elements `lambda d^alpha` with
    /// `lambda != 0`.
    pub fn unit_check(&self) -> Option<(Rational, Vec<i64>)> {
        if self.terms.len() != 1 {
            return None;
        }
        let ((hpows, shifts), c) = self.terms.iter().next().unwrap();
        if hpows.iter().any(|&k| k != 0) {
            return None;
        }
        Some((c.clone(), shifts.clone()))
    }

    /// Is this a nonzero scalar (a unit with trivial shift)?
    pub fn as_nonzero_scalar(&self) -> Option<Rational> {
        match self.unit_check() {
            Some((c, shifts)) if shifts.iter().all(|&s| s == 0) => Some(c),
            _ => None,
        }
    }
}

/// Canonical projection onto the quotient: monomials with any matrix-unit
/// coordinate die; a surviving monomial `prod_i v_{a_i} H^{k_i}` maps to the
/// product of the images `d_i^{-a_i} H_i^{k_i} = (H_i - a_i)^{k_i} d_i^{-a_i}`,
/// expanded into the coefficient-left basis. This makes the projection a ring
/// homomorphism.
pub fn project_bn(a: &Operator) -> BnElement {
    use crate::atom::Atom;
    let n = a.arity();
    let mut out = BnElement::zero(n);
    'terms: for (m, c) in a.terms() {
        let mut shifts = Vec::with_capacity(n);
        let mut hpows = Vec::with_capacity(n);
        for atom in m.atoms() {
            match *atom {
                Atom::Mat { .. } => continue 'terms,
                Atom::Poly { shift, hpow } => {
                    shifts.push(-shift);
                    hpows.push(hpow);
                }
            }
        }
        // expand prod_i (H_i + shifts_i)^{hpows_i}  (note shifts_i = -a_i)
        let mut partial: Vec<(Vec<u32>, Rational)> = vec![(Vec::new(), c.clone())];
        for i in 0..n {
            let mut next = Vec::new();
            for j in 0..=hpows[i] {
                let b = binomial(hpows[i], j) * int_pow(shifts[i], hpows[i] - j);
                if b.is_zero() {
                    continue;
                }
                let coef = Rational::from_integer(b);
                for (prefix, pc) in &partial {
                    let mut hp = prefix.clone();
                    hp.push(j);
                    next.push((hp, pc * &coef));
                }
            }
            partial = next;
        }
        for (hp, cc) in partial {
            out.add_term((hp, shifts.clone()), cc);
        }
    }
    out
}
