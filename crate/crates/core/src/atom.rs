//! One-coordinate basis atoms and their multiplication table.
//!
//! A single tensor coordinate of a canonical basis monomial is either
//! `Poly { shift, hpow }`, meaning `v_shift H^hpow` (with `v_s = int^s` for
//! `s > 0`, `1` for `s = 0`, `d^{-s}` for `s < 0`), or `Mat { row, col }`,
//! meaning the matrix unit `e_{row,col} = int^row d^col - int^{row+1} d^{col+1}`.
//!
//! Products of atoms normalize through a short rewrite table:
//!
//! * `H v_c = v_c (H + c)`
//! * `d^b int^c = v_{c-b}` (derivation is a left inverse of integration)
//! * `int^a d^b = v_{a-b} - sum_{t=1..min(a,b)} e_{a-t,b-t}`
//! * `int e_{s,t} = e_{s+1,t}`, `d e_{s,t} = e_{s-1,t}` (zero when `s = 0`)
//! * `e_{s,t} int = e_{s,t-1}` (zero when `t = 0`), `e_{s,t} d = e_{s,t+1}`
//! * `e_{s,t} p(H) = p(t+1) e_{s,t}` and `p(H) e_{s,t} = p(s+1) e_{s,t}`
//! * `e_{s,t} e_{u,w} = delta_{t,u} e_{s,w}`

use crate::rational::{binomial, eval_at_int, int_pow, Rational};
use num_traits::Zero;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    /// `v_shift H^hpow`
    Poly { shift: i64, hpow: u32 },
    /// `e_{row,col}`
    Mat { row: u32, col: u32 },
}

impl Atom {
    pub const ONE: Atom = Atom::Poly { shift: 0, hpow: 0 };

    pub fn is_identity(&self) -> bool {
        *self == Atom::ONE
    }

    /// Degree of the atom in the coordinate grading.
    pub fn degree(&self) -> i64 {
        match *self {
            Atom::Poly { shift, .. } => shift,
            Atom::Mat { row, col } => row as i64 - col as i64,
        }
    }

    pub fn is_mat(&self) -> bool {
        matches!(self, Atom::Mat { .. })
    }

    /// Image under the involution `d <-> int`, `H -> H`, `e_{s,t} -> e_{t,s}`,
    /// expanded back into canonical atoms:
    /// `(v_a H^k)^* = H^k v_{-a} = v_{-a} (H - a)^k`.
    pub fn star(&self) -> Vec<(Atom, Rational)> {
        match *self {
            Atom::Mat { row, col } => vec![(
                Atom::Mat { row: col, col: row },
                Rational::from_integer(1.into()),
            )],
            Atom::Poly { shift, hpow } => {
                let mut out = Vec::with_capacity(hpow as usize + 1);
                for j in 0..=hpow {
                    let c = binomial(hpow, j) * int_pow(-shift, hpow - j);
                    if !c.is_zero() {
                        out.push((
                            Atom::Poly {
                                shift: -shift,
                                hpow: j,
                            },
                            Rational::from_integer(c),
                        ));
                    }
                }
                out
            }
        }
    }
}

/// Coefficient list of `(H + c)^k * H^m` in powers of `H`.
fn shifted_power(c: i64, k: u32, m: u32) -> Vec<Rational> {
    let mut coeffs = vec![Rational::zero(); (k + m + 1) as usize];
    for j in 0..=k {
        let b = binomial(k, j) * int_pow(c, k - j);
        coeffs[(j + m) as usize] += Rational::from_integer(b);
    }
    coeffs
}

/// Canonical expansion of the product of two one-coordinate atoms.
///
/// Total function: the empty vector encodes the zero product.
pub fn atom_mul(left: &Atom, right: &Atom) -> Vec<(Atom, Rational)> {
    match (*left, *right) {
        (Atom::Poly { shift: a, hpow: k }, Atom::Poly { shift: c, hpow: m }) => {
            // v_a H^k v_c H^m = v_a v_c (H+c)^k H^m
            let p = shifted_power(c, k, m);
            let mut out = Vec::new();
            let s = a + c;
            for (j, q) in p.iter().enumerate() {
                if !q.is_zero() {
                    out.push((
                        Atom::Poly {
                            shift: s,
                            hpow: j as u32,
                        },
                        q.clone(),
                    ));
                }
            }
            if a > 0 && c < 0 {
                // int^a d^b picks up matrix corrections
                let b = -c;
                for t in 1..=a.min(b) {
                    let row = (a - t) as u32;
                    let col = (b - t) as u32;
                    let val = -eval_at_int(&p, col as i64 + 1);
                    if !val.is_zero() {
                        out.push((Atom::Mat { row, col }, val));
                    }
                }
            }
            out
        }
        (Atom::Poly { shift: a, hpow: k }, Atom::Mat { row: s, col: t }) => {
            // H^k e_{s,t} = (s+1)^k e_{s,t}; then shift the row by v_a
            let coef = Rational::from_integer(int_pow(s as i64 + 1, k));
            let row = s as i64 + a;
            if row < 0 {
                return Vec::new();
            }
            vec![(
                Atom::Mat {
                    row: row as u32,
                    col: t,
                },
                coef,
            )]
        }
        (Atom::Mat { row: s, col: t }, Atom::Poly { shift: c, hpow: m }) => {
            // e_{s,t} v_c shifts the column down by c, then H^m evaluates
            let col = t as i64 - c;
            if col < 0 {
                return Vec::new();
            }
            let coef = Rational::from_integer(int_pow(col + 1, m));
            vec![(
                Atom::Mat {
                    row: s,
                    col: col as u32,
                },
                coef,
            )]
        }
        (Atom::Mat { row: s, col: t }, Atom::Mat { row: u, col: w }) => {
            if t == u {
                vec![(
                    Atom::Mat { row: s, col: w },
                    Rational::from_integer(1.into()),
                )]
            } else {
                Vec::new()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn poly(shift: i64, hpow: u32) -> Atom {
        Atom::Poly { shift, hpow }
    }

    fn mat(row: u32, col: u32) -> Atom {
        Atom::Mat { row, col }
    }

    fn sorted(mut v: Vec<(Atom, Rational)>) -> Vec<(Atom, Rational)> {
        v.sort_by_key(|x| x.0);
        v
    }

    #[test]
    fn d_int_collapses() {
        // d * int = 1
        assert_eq!(
            atom_mul(&poly(-1, 0), &poly(1, 0)),
            vec![(poly(0, 0), rat(1))]
        );
    }

    #[test]
    fn int_d_has_matrix_correction() {
        // int * d = 1 - e_{0,0}
        assert_eq!(
            sorted(atom_mul(&poly(1, 0), &poly(-1, 0))),
            vec![(poly(0, 0), rat(1)), (mat(0, 0), rat(-1))]
        );
    }

    #[test]
    fn int2_d2() {
        // int^2 d^2 = 1 - e_{0,0} - e_{1,1}
        assert_eq!(
            sorted(atom_mul(&poly(2, 0), &poly(-2, 0))),
            vec![
                (poly(0, 0), rat(1)),
                (mat(0, 0), rat(-1)),
                (mat(1, 1), rat(-1)),
            ]
        );
    }

    #[test]
    fn h_commutes_past_int() {
        // H int = int (H + 1) = int H + int
        assert_eq!(
            sorted(atom_mul(&poly(0, 1), &poly(1, 0))),
            vec![(poly(1, 0), rat(1)), (poly(1, 1), rat(1))]
        );
    }

    #[test]
    fn matrix_units_compose() {
        assert_eq!(
            atom_mul(&mat(1, 2), &mat(2, 5)),
            vec![(mat(1, 5), rat(1))]
        );
        assert_eq!(atom_mul(&mat(1, 2), &mat(3, 5)), vec![]);
    }

    #[test]
    fn h_eigenvalue_on_diagonal() {
        // H e_{3,3} = 4 e_{3,3}
        assert_eq!(
            atom_mul(&poly(0, 1), &mat(3, 3)),
            vec![(mat(3, 3), rat(4))]
        );
    }

    #[test]
    fn d_kills_top_row() {
        // d e_{0,t} = 0
        assert_eq!(atom_mul(&poly(-1, 0), &mat(0, 4)), vec![]);
        // e_{s,0} int = 0
        assert_eq!(atom_mul(&mat(3, 0), &poly(1, 0)), vec![]);
    }

    #[test]
    fn corrections_pick_up_evaluated_polynomials() {
        // int^2 H^2 * d^3 H = d (H-3)^2 H - 2 e_{0,1}, checked by hand
        // against the action: the e_{1,2} correction carries (3-3)^2 3 = 0
        // and the e_{0,1} correction carries (2-3)^2 2 = 2.
        let got = sorted(atom_mul(&poly(2, 2), &poly(-3, 1)));
        // d (H-3)^2 H = d (H^3 - 6 H^2 + 9 H)
        assert_eq!(
            got,
            vec![
                (poly(-1, 1), rat(9)),
                (poly(-1, 2), rat(-6)),
                (poly(-1, 3), rat(1)),
                (mat(0, 1), rat(-2)),
            ]
        );
    }

    #[test]
    fn int_h_times_d_is_h_minus_one() {
        // (int H) d = x d = H - 1
        assert_eq!(
            sorted(atom_mul(&poly(1, 1), &poly(-1, 0))),
            vec![(poly(0, 0), rat(-1)), (poly(0, 1), rat(1))]
        );
    }

    #[test]
    fn star_on_atoms() {
        assert_eq!(poly(1, 0).star(), vec![(poly(-1, 0), rat(1))]);
        assert_eq!(mat(2, 5).star(), vec![(mat(5, 2), rat(1))]);
        // (int H)^* = H d = d (H - 1) = d H - d
        assert_eq!(
            sorted(poly(1, 1).star()),
            vec![(poly(-1, 0), rat(-1)), (poly(-1, 1), rat(1))]
        );
    }

    #[test]
    fn atom_order_matches_printing_convention() {
        // Poly before Mat, then lexicographic fields.
        assert!(poly(-1, 0) < poly(0, 0));
        assert!(poly(0, 0) < poly(0, 1));
        assert!(poly(5, 9) < mat(0, 0));
        assert!(mat(0, 1) < mat(1, 0));
    }
}
