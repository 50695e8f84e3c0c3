//! The complete two-sided ideal lattice, encoded as antichains of 0/1
//! vectors: a vector selects per coordinate either the finite-matrix ideal
//! (bit 0) or the whole coordinate algebra (bit 1), and an ideal is a sum of
//! such tensor factors over a set of pairwise incomparable vectors.
//!
//! Sums are unions, products are pointwise minima, and both reduce to the
//! maximal vectors. Primes correspond to subsets of coordinates; the minimal
//! primes of an ideal are the minimal transversals of its zero-set
//! hypergraph.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{check_arity, Error, Result};
use crate::operator::Operator;

/// Largest arity the combinatorial routines will take on.
pub const MAX_LATTICE_ARITY: usize = 12;

fn check_lattice_arity(arity: usize) -> Result<()> {
    if arity == 0 || arity > MAX_LATTICE_ARITY {
        return Err(Error::ResourceGuard(format!(
            "ideal lattice arity must be in 1..={MAX_LATTICE_ARITY}, got {arity}"
        )));
    }
    Ok(())
}

/// Pointwise order on bit vectors: `f <= g` iff every set bit of `f` is set
/// in `g`.
fn leq(f: u16, g: u16) -> bool {
    f & !g == 0
}

/// Sort key realizing the printed order: coordinate 1 first, as a binary
/// string.
fn vec_key(mask: u16, arity: usize) -> u16 {
    let mut key = 0u16;
    for i in 0..arity {
        if mask & (1 << i) != 0 {
            key |= 1 << (arity - 1 - i);
        }
    }
    key
}

/// An ideal, stored as the antichain of maximal vectors. The empty antichain
/// is the zero ideal; the all-ones singleton is the whole algebra.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IdealAc {
    arity: usize,
    chain: Vec<u16>,
}

impl IdealAc {
    /// Build an ideal from arbitrary vectors, keeping the maximal ones.
    pub fn make(arity: usize, vectors: impl IntoIterator<Item = u16>) -> Result<IdealAc> {
        check_lattice_arity(arity)?;
        let full = (1u16 << arity) - 1;
        let mut vecs: Vec<u16> = Vec::new();
        for v in vectors {
            if v & !full != 0 {
                return Err(Error::VectorLength {
                    len: 16 - v.leading_zeros() as usize,
                    arity,
                });
            }
            vecs.push(v);
        }
        let mut chain: Vec<u16> = Vec::new();
        for &v in &vecs {
            if vecs.iter().any(|&w| w != v && leq(v, w) && !leq(w, v)) {
                continue;
            }
            if !chain.contains(&v) {
                chain.push(v);
            }
        }
        chain.sort_by_key(|&m| vec_key(m, arity));
        Ok(IdealAc { arity, chain })
    }

    pub fn zero(arity: usize) -> IdealAc {
        IdealAc {
            arity,
            chain: Vec::new(),
        }
    }

    /// The whole algebra.
    pub fn full(arity: usize) -> IdealAc {
        IdealAc {
            arity,
            chain: vec![(1u16 << arity) - 1],
        }
    }

    /// The smallest nonzero ideal: the all-zeros vector (finite matrices in
    /// every coordinate).
    pub fn finite_matrices(arity: usize) -> IdealAc {
        IdealAc {
            arity,
            chain: vec![0],
        }
    }

    /// The largest proper ideal: all vectors with exactly one zero.
    pub fn maximal(arity: usize) -> IdealAc {
        let full = (1u16 << arity) - 1;
        IdealAc::make(arity, (0..arity).map(|i| full & !(1 << i))).expect("valid arity")
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn vectors(&self) -> &[u16] {
        &self.chain
    }

    pub fn is_zero(&self) -> bool {
        self.chain.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.chain == [(1u16 << self.arity) - 1]
    }

    /// Lattice order: does `self` contain `other`?
    pub fn contains(&self, other: &IdealAc) -> Result<bool> {
        check_arity(self.arity, other.arity)?;
        Ok(other
            .chain
            .iter()
            .all(|&g| self.chain.iter().any(|&f| leq(g, f))))
    }

    pub fn sum(&self, other: &IdealAc) -> Result<IdealAc> {
        check_arity(self.arity, other.arity)?;
        IdealAc::make(
            self.arity,
            self.chain.iter().chain(&other.chain).copied(),
        )
    }

    pub fn product(&self, other: &IdealAc) -> Result<IdealAc> {
        check_arity(self.arity, other.arity)?;
        let mut vecs = Vec::new();
        for &f in &self.chain {
            for &g in &other.chain {
                vecs.push(f & g);
            }
        }
        IdealAc::make(self.arity, vecs)
    }

    /// Greatest lower bound, computed independently of the product: the
    /// maximal vectors lying below both antichains.
    pub fn intersect(&self, other: &IdealAc) -> Result<IdealAc> {
        check_arity(self.arity, other.arity)?;
        let below = |chain: &[u16], v: u16| chain.iter().any(|&f| leq(v, f));
        let all = 0..(1u32 << self.arity);
        let vecs = all
            .map(|v| v as u16)
            .filter(|&v| below(&self.chain, v) && below(&other.chain, v));
        IdealAc::make(self.arity, vecs)
    }

    /// Is the operator a member? A canonical monomial lies in a tensor
    /// factor ideal exactly when its matrix coordinates cover the factor's
    /// zero set, and membership in a sum of such factors is monomial-wise.
    pub fn membership(&self, op: &Operator) -> Result<bool> {
        check_arity(self.arity, op.arity())?;
        let full = (1u16 << self.arity) - 1;
        Ok(op.terms().all(|(m, _)| {
            let s = m.mat_mask();
            self.chain.iter().any(|&f| {
                let zero_set = !f & full;
                zero_set & !s == 0
            })
        }))
    }
}

impl fmt::Display for IdealAc {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{{")?;
        for (idx, &v) in self.chain.iter().enumerate() {
            if idx > 0 {
                write!(out, ",")?;
            }
            for i in 0..self.arity {
                write!(out, "{}", (v >> i) & 1)?;
            }
        }
        write!(out, "}}")
    }
}

/// A prime ideal name: the subset of coordinates whose height-one primes are
/// summed; the empty subset names the zero ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeLabel {
    bits: u16,
}

impl PrimeLabel {
    pub fn empty() -> PrimeLabel {
        PrimeLabel { bits: 0 }
    }

    pub fn from_members(arity: usize, members: impl IntoIterator<Item = usize>) -> Result<PrimeLabel> {
        let mut bits = 0u16;
        for i in members {
            crate::error::check_index(i, arity)?;
            bits |= 1 << (i - 1);
        }
        Ok(PrimeLabel { bits })
    }

    pub(crate) fn from_bits(bits: u16) -> PrimeLabel {
        PrimeLabel { bits }
    }

    pub fn members(&self) -> Vec<usize> {
        (0..16)
            .filter(|i| self.bits & (1 << i) != 0)
            .map(|i| i + 1)
            .collect()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_subset(&self, other: &PrimeLabel) -> bool {
        leq(self.bits, other.bits)
    }

    /// Order used everywhere a list of labels is printed: by size, then by
    /// smallest members first.
    fn sort_key(&self) -> (usize, Vec<usize>) {
        (self.len(), self.members())
    }
}

impl fmt::Display for PrimeLabel {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{{")?;
        for (idx, i) in self.members().iter().enumerate() {
            if idx > 0 {
                write!(out, ",")?;
            }
            write!(out, "{i}")?;
        }
        write!(out, "}}")
    }
}

/// The prime ideal named by a subset of coordinates.
pub fn prime_from_subset(arity: usize, label: &PrimeLabel) -> Result<IdealAc> {
    check_lattice_arity(arity)?;
    let full = (1u16 << arity) - 1;
    if label.bits & !full != 0 {
        return Err(Error::VectorLength {
            len: 16 - label.bits.leading_zeros() as usize,
            arity,
        });
    }
    IdealAc::make(
        arity,
        label.members().iter().map(|&i| full & !(1 << (i - 1))),
    )
}

/// Recognize the prime ideals: the zero ideal (named by the empty subset)
/// and the ideals whose antichain vectors each miss exactly one coordinate,
/// all distinct. The whole algebra is not prime by convention.
pub fn is_prime(a: &IdealAc) -> Option<PrimeLabel> {
    if a.is_full() {
        return None;
    }
    if a.is_zero() {
        return Some(PrimeLabel::empty());
    }
    let full = (1u16 << a.arity) - 1;
    let mut bits = 0u16;
    for &v in &a.chain {
        let zeros = !v & full;
        if zeros.count_ones() != 1 || bits & zeros != 0 {
            return None;
        }
        bits |= zeros;
    }
    Some(PrimeLabel { bits })
}

/// Minimal primes over an ideal: the minimal transversals of the hypergraph
/// of zero sets, found by exhaustive enumeration in order of size with
/// superset pruning.
pub fn minimal_primes(a: &IdealAc) -> Result<Vec<PrimeLabel>> {
    if a.is_full() {
        return Err(Error::Domain(
            "the whole algebra has no primes above it".into(),
        ));
    }
    check_lattice_arity(a.arity)?;
    let full = (1u16 << a.arity) - 1;
    let edges: Vec<u16> = a.chain.iter().map(|&f| !f & full).collect();
    let mut subsets: Vec<u16> = (0..(1u32 << a.arity)).map(|m| m as u16).collect();
    subsets.sort_by_key(|m| m.count_ones());
    let mut found: Vec<u16> = Vec::new();
    for m in subsets {
        if found.iter().any(|&t| leq(t, m)) {
            continue;
        }
        if edges.iter().all(|&e| e & m != 0) {
            found.push(m);
        }
    }
    let mut labels: Vec<PrimeLabel> = found.into_iter().map(PrimeLabel::from_bits).collect();
    labels.sort_by_key(|l| l.sort_key());
    Ok(labels)
}

/// Unique factorization into incomparable primes; equals the set of minimal
/// primes, and their product (equivalently intersection) reconstructs the
/// ideal. The zero ideal factors as itself (it is prime).
pub fn factor_into_primes(a: &IdealAc) -> Result<Vec<PrimeLabel>> {
    minimal_primes(a)
}

/// All ideals, each exactly once, ordered by antichain size then by the
/// vector lists.
pub fn enumerate_ideals(arity: usize) -> Result<Vec<IdealAc>> {
    check_lattice_arity(arity)?;
    if arity > 5 {
        return Err(Error::ResourceGuard(format!(
            "ideal enumeration limited to arity 5, got {arity}"
        )));
    }
    let mut masks: Vec<u16> = (0..(1u32 << arity)).map(|m| m as u16).collect();
    masks.sort_by_key(|&m| vec_key(m, arity));
    let mut out: Vec<IdealAc> = Vec::new();
    let mut chosen: Vec<u16> = Vec::new();
    fn recurse(
        arity: usize,
        masks: &[u16],
        start: usize,
        chosen: &mut Vec<u16>,
        out: &mut Vec<IdealAc>,
    ) {
        out.push(IdealAc {
            arity,
            chain: chosen.clone(),
        });
        for idx in start..masks.len() {
            let v = masks[idx];
            if chosen.iter().all(|&w| !leq(v, w) && !leq(w, v)) {
                chosen.push(v);
                recurse(arity, masks, idx + 1, chosen, out);
                chosen.pop();
            }
        }
    }
    recurse(arity, &masks, 0, &mut chosen, &mut out);
    out.sort_by(|a, b| {
        (a.chain.len(), a.chain.iter().map(|&m| vec_key(m, arity)).collect::<Vec<_>>())
            .cmp(&(b.chain.len(), b.chain.iter().map(|&m| vec_key(m, arity)).collect::<Vec<_>>()))
    });
    Ok(out)
}

/// All prime labels for the given arity (the full spectrum), in display
/// order.
pub fn spectrum(arity: usize) -> Result<Vec<PrimeLabel>> {
    check_lattice_arity(arity)?;
    let mut labels: Vec<PrimeLabel> = (0..(1u32 << arity))
        .map(|m| PrimeLabel::from_bits(m as u16))
        .collect();
    labels.sort_by_key(|l| l.sort_key());
    Ok(labels)
}

/// Covering relation in the spectrum, computed on the ideals themselves: `q`
/// covers `p` iff `p` is strictly below `q` and no prime sits strictly
/// between.
fn covers(arity: usize, p: &PrimeLabel, q: &PrimeLabel) -> Result<bool> {
    let ip = prime_from_subset(arity, p)?;
    let iq = prime_from_subset(arity, q)?;
    if !(iq.contains(&ip)? && ip != iq) {
        return Ok(false);
    }
    for r in spectrum(arity)? {
        if r == *p || r == *q {
            continue;
        }
        let ir = prime_from_subset(arity, &r)?;
        if ir.contains(&ip)? && iq.contains(&ir)? && ir != ip && ir != iq {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Height of a prime and every maximal chain of primes from `p` up to `q`.
///
/// Chains are enumerated against the actual ideal order, one covering step
/// at a time, so equal lengths here are evidence of catenarity rather than
/// an artifact of subset bookkeeping.
pub fn height_and_chains(
    arity: usize,
    p: &PrimeLabel,
    q: &PrimeLabel,
) -> Result<(usize, Vec<Vec<PrimeLabel>>)> {
    check_lattice_arity(arity)?;
    let ip = prime_from_subset(arity, p)?;
    let iq = prime_from_subset(arity, q)?;
    if !iq.contains(&ip)? {
        return Err(Error::Domain(format!("{p} is not below {q}")));
    }
    // candidates strictly inside the interval
    let mut interval: Vec<PrimeLabel> = Vec::new();
    for r in spectrum(arity)? {
        let ir = prime_from_subset(arity, &r)?;
        if ir.contains(&ip)? && iq.contains(&ir)? {
            interval.push(r);
        }
    }
    let mut chains: Vec<Vec<PrimeLabel>> = Vec::new();
    let mut current = vec![*p];
    fn extend(
        arity: usize,
        q: &PrimeLabel,
        interval: &[PrimeLabel],
        current: &mut Vec<PrimeLabel>,
        chains: &mut Vec<Vec<PrimeLabel>>,
    ) -> Result<()> {
        let last = *current.last().unwrap();
        if last == *q {
            chains.push(current.clone());
            return Ok(());
        }
        for r in interval {
            if covers(arity, &last, r)? {
                current.push(*r);
                extend(arity, q, interval, current, chains)?;
                current.pop();
            }
        }
        Ok(())
    }
    extend(arity, q, &interval, &mut current, &mut chains)?;
    Ok((q.len(), chains))
}

/// The distinct minimal elements of the union of the minimal primes of the
/// given ideals (the decomposition criterion compares against this set).
pub fn minimal_of_union(ideals: &[IdealAc]) -> Result<Vec<PrimeLabel>> {
    let mut all: BTreeSet<PrimeLabel> = BTreeSet::new();
    for a in ideals {
        for p in minimal_primes(a)? {
            all.insert(p);
        }
    }
    let mut minimal: Vec<PrimeLabel> = all
        .iter()
        .filter(|p| !all.iter().any(|r| r != *p && r.is_subset(p)))
        .copied()
        .collect();
    minimal.sort_by_key(|l| l.sort_key());
    Ok(minimal)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mk(n: usize, vs: &[u16]) -> IdealAc {
        IdealAc::make(n, vs.iter().copied()).unwrap()
    }

    #[test]
    fn reduction_to_maximal() {
        // (0,0) <= (0,1): vector 0b10 = (0,1)
        let a = mk(2, &[0b10, 0b00]);
        assert_eq!(a.vectors(), &[0b10]);
        let again = IdealAc::make(2, a.vectors().iter().copied()).unwrap();
        assert_eq!(a, again);
    }

    #[test]
    fn display_is_coordinate_first() {
        let p1 = prime_from_subset(2, &PrimeLabel::from_members(2, [1]).unwrap()).unwrap();
        assert_eq!(p1.to_string(), "{01}");
        let a2 = IdealAc::maximal(2);
        assert_eq!(a2.to_string(), "{01,10}");
        assert_eq!(IdealAc::zero(2).to_string(), "{}");
    }

    #[test]
    fn sum_product_intersect() {
        let p1 = prime_from_subset(2, &PrimeLabel::from_members(2, [1]).unwrap()).unwrap();
        let p2 = prime_from_subset(2, &PrimeLabel::from_members(2, [2]).unwrap()).unwrap();
        assert_eq!(p1.product(&p2).unwrap(), IdealAc::finite_matrices(2));
        assert_eq!(p1.sum(&p2).unwrap(), IdealAc::maximal(2));
        assert_eq!(p1.intersect(&p2).unwrap(), IdealAc::finite_matrices(2));
    }

    #[test]
    fn containment() {
        let p1 = prime_from_subset(2, &PrimeLabel::from_members(2, [1]).unwrap()).unwrap();
        let p2 = prime_from_subset(2, &PrimeLabel::from_members(2, [2]).unwrap()).unwrap();
        let f2 = IdealAc::finite_matrices(2);
        assert!(p1.contains(&f2).unwrap());
        assert!(!p1.contains(&p2).unwrap());
        assert!(p1.contains(&p1).unwrap());
    }

    #[test]
    fn prime_recognition() {
        let f2 = IdealAc::finite_matrices(2);
        assert_eq!(is_prime(&f2), None);
        assert_eq!(is_prime(&IdealAc::zero(2)), Some(PrimeLabel::empty()));
        assert_eq!(is_prime(&IdealAc::full(2)), None);
        let n = 3;
        let primes = enumerate_ideals(n)
            .unwrap()
            .into_iter()
            .filter(|a| is_prime(a).is_some())
            .count();
        assert_eq!(primes, 8);
    }

    #[test]
    fn minimal_primes_examples() {
        let f2 = IdealAc::finite_matrices(2);
        let min = minimal_primes(&f2).unwrap();
        assert_eq!(
            min,
            vec![
                PrimeLabel::from_members(2, [1]).unwrap(),
                PrimeLabel::from_members(2, [2]).unwrap(),
            ]
        );
        // a prime is its own minimal prime
        let l = PrimeLabel::from_members(3, [1, 3]).unwrap();
        let p = prime_from_subset(3, &l).unwrap();
        assert_eq!(minimal_primes(&p).unwrap(), vec![l]);
        // zero sets {1,2} and {2,3}: transversals {2} and {1,3}
        let a = mk(3, &[0b100, 0b001]);
        let min = minimal_primes(&a).unwrap();
        assert_eq!(
            min,
            vec![
                PrimeLabel::from_members(3, [2]).unwrap(),
                PrimeLabel::from_members(3, [1, 3]).unwrap(),
            ]
        );
    }

    #[test]
    fn maximal_ideal_factors_through_full_subset() {
        let a2 = IdealAc::maximal(2);
        let min = minimal_primes(&a2).unwrap();
        assert_eq!(min, vec![PrimeLabel::from_members(2, [1, 2]).unwrap()]);
        let rebuilt = prime_from_subset(2, &min[0]).unwrap();
        assert_eq!(rebuilt, a2);
    }

    #[test]
    fn ideal_counts() {
        assert_eq!(enumerate_ideals(1).unwrap().len(), 3);
        assert_eq!(enumerate_ideals(2).unwrap().len(), 6);
        assert_eq!(enumerate_ideals(3).unwrap().len(), 20);
    }

    #[test]
    fn chain_enumeration() {
        let n = 2;
        let bottom = PrimeLabel::empty();
        let top = PrimeLabel::from_members(n, [1, 2]).unwrap();
        let (height, chains) = height_and_chains(n, &bottom, &top).unwrap();
        assert_eq!(height, 2);
        assert_eq!(chains.len(), 2);
        assert!(chains.iter().all(|c| c.len() == 3));
        let (h0, trivial) = height_and_chains(n, &top, &top).unwrap();
        assert_eq!(h0, 2);
        assert_eq!(trivial, vec![vec![top]]);
        let bad = height_and_chains(n, &top, &bottom);
        assert!(bad.is_err());
    }

    #[test]
    fn membership_examples() {
        // e00 in coordinate 1 (times anything poly in coordinate 2)
        let op = Operator::mat_unit(2, 1, 0, 0)
            .unwrap()
            .mul(&Operator::h(2, 2).unwrap())
            .unwrap();
        let p1 = prime_from_subset(2, &PrimeLabel::from_members(2, [1]).unwrap()).unwrap();
        let p2 = prime_from_subset(2, &PrimeLabel::from_members(2, [2]).unwrap()).unwrap();
        assert!(p1.membership(&op).unwrap());
        assert!(!p2.membership(&op).unwrap());
        assert!(IdealAc::full(2).membership(&op).unwrap());
        let d1 = Operator::der(1, 1).unwrap();
        let p = prime_from_subset(1, &PrimeLabel::from_members(1, [1]).unwrap()).unwrap();
        assert!(!p.membership(&d1).unwrap());
    }
}
