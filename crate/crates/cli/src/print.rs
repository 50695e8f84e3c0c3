//! Deterministic text rendering: canonical operator forms, polynomials, and
//! quotient-algebra elements. Terms are emitted in the fixed monomial order
//! and the output re-parses to the same canonical form.

use idop::atom::Atom;
use idop::bn::BnElement;
use idop::operator::Operator;
use idop::poly::Polynomial;
use idop::rational::{abs, is_one, Rational};
use num_traits::Signed;

fn push_power(out: &mut String, sym: &str, coord: usize, exp: u32) {
    out.push_str(sym);
    out.push_str(&coord.to_string());
    if exp > 1 {
        out.push('^');
        out.push_str(&exp.to_string());
    }
}

fn atom_string(coord: usize, atom: &Atom) -> String {
    let mut s = String::new();
    match *atom {
        Atom::Poly { shift, hpow } => {
            if shift > 0 {
                push_power(&mut s, "int", coord, shift as u32);
            } else if shift < 0 {
                push_power(&mut s, "d", coord, (-shift) as u32);
            }
            if hpow > 0 {
                if !s.is_empty() {
                    s.push(' ');
                }
                push_power(&mut s, "H", coord, hpow);
            }
        }
        Atom::Mat { row, col } => {
            s.push('e');
            s.push_str(&coord.to_string());
            s.push('[');
            s.push_str(&row.to_string());
            s.push(',');
            s.push_str(&col.to_string());
            s.push(']');
        }
    }
    s
}

/// Assemble `coefficient monomial` terms into a signed sum.
fn join_terms(terms: Vec<(Rational, String)>) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (c, mono)) in terms.into_iter().enumerate() {
        let neg = c.is_negative();
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mag = abs(&c);
        if mono.is_empty() {
            out.push_str(&mag.to_string());
        } else if is_one(&mag) {
            out.push_str(&mono);
        } else {
            out.push_str(&mag.to_string());
            out.push(' ');
            out.push_str(&mono);
        }
    }
    out
}

/// Canonical text form of an operator.
pub fn print_canonical(a: &Operator) -> String {
    let terms = a
        .terms()
        .map(|(m, c)| {
            let atoms: Vec<String> = m
                .atoms()
                .iter()
                .enumerate()
                .filter(|(_, atom)| !atom.is_identity())
                .map(|(i, atom)| atom_string(i + 1, atom))
                .collect();
            (c.clone(), atoms.join(" "))
        })
        .collect();
    join_terms(terms)
}

/// Text form of a polynomial, in ascending exponent order.
pub fn print_polynomial(p: &Polynomial) -> String {
    let terms = p
        .terms()
        .map(|(expo, c)| {
            let vars: Vec<String> = expo
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let mut s = String::new();
                    push_power(&mut s, "x", i + 1, e);
                    s
                })
                .collect();
            (c.clone(), vars.join(" "))
        })
        .collect();
    join_terms(terms)
}

/// Text form of a quotient-algebra element in the basis `H^k d^alpha`.
pub fn print_bn(u: &BnElement) -> String {
    let terms = u
        .terms()
        .map(|((hpows, shifts), c)| {
            let mut parts: Vec<String> = Vec::new();
            for (i, &k) in hpows.iter().enumerate() {
                if k > 0 {
                    let mut s = String::new();
                    push_power(&mut s, "H", i + 1, k);
                    parts.push(s);
                }
            }
            for (i, &a) in shifts.iter().enumerate() {
                if a != 0 {
                    let mut s = String::new();
                    s.push('d');
                    s.push_str(&(i + 1).to_string());
                    if a != 1 {
                        s.push('^');
                        s.push_str(&a.to_string());
                    }
                    parts.push(s);
                }
            }
            (c.clone(), parts.join(" "))
        })
        .collect();
    join_terms(terms)
}
