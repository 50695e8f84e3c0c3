//! Tokenizer and recursive-descent parser for operator expressions, plus the
//! antichain and subset literals used by the ideal commands.
//!
//! Grammar:
//!
//! ```text
//! expr       := ["-"] term (("+"|"-") term)*
//! term       := factor ("*"? factor)*          juxtaposition = product
//! factor     := atom ("^" nat)?
//! atom       := rational | generator | matrixunit | "(" expr ")"
//! generator  := ("x"|"d"|"int"|"H") nat
//! matrixunit := "e" nat "[" nat "," nat "]"
//! rational   := nat ("/" nat)?
//! ```
//!
//! Whitespace is insignificant. Signs are handled at the expression level
//! and folded into the leading scalar of a term.

use num_bigint::BigInt;
use num_traits::Zero;

use idop::rational::Rational;

use crate::ast::{ExprAst, GenKind};
use crate::CliError;

const MAX_POWER: u32 = 4096;
const MAX_INDEX: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Nat(BigInt),
    Word(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
}

fn lex(text: &str) -> Result<Lexer, CliError> {
    let mut toks = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let pos = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '+' => {
                toks.push((Tok::Plus, pos));
                i += 1;
            }
            '-' => {
                toks.push((Tok::Minus, pos));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, pos));
                i += 1;
            }
            '/' => {
                toks.push((Tok::Slash, pos));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, pos));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, pos));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, pos));
                i += 1;
            }
            '[' => {
                toks.push((Tok::LBracket, pos));
                i += 1;
            }
            ']' => {
                toks.push((Tok::RBracket, pos));
                i += 1;
            }
            ',' => {
                toks.push((Tok::Comma, pos));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                toks.push((Tok::Nat(n), pos));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                    i += 1;
                }
                toks.push((Tok::Word(text[start..i].to_string()), pos));
            }
            _ => {
                return Err(CliError::Parse {
                    pos,
                    msg: format!("unexpected character '{c}'"),
                })
            }
        }
    }
    Ok(Lexer { toks })
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    cursor: usize,
    arity: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.cursor).map(|t| &t.0)
    }

    fn pos(&self) -> usize {
        self.toks
            .get(self.cursor)
            .map(|t| t.1)
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.cursor).cloned();
        self.cursor += 1;
        t.map(|x| x.0)
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), CliError> {
        let pos = self.pos();
        match self.bump() {
            Some(t) if t == tok => Ok(()),
            _ => Err(CliError::Parse {
                pos,
                msg: format!("expected {what}"),
            }),
        }
    }

    fn nat(&mut self, what: &str) -> Result<BigInt, CliError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Nat(n)) => Ok(n),
            _ => Err(CliError::Parse {
                pos,
                msg: format!("expected {what}"),
            }),
        }
    }

    fn small_nat(&mut self, limit: u64, what: &str) -> Result<u64, CliError> {
        let pos = self.pos();
        let n = self.nat(what)?;
        match u64::try_from(&n) {
            Ok(v) if v <= limit => Ok(v),
            _ => Err(CliError::Domain(format!(
                "{what} {n} out of range (limit {limit}, at position {pos})"
            ))),
        }
    }

    fn coord_index(&mut self) -> Result<usize, CliError> {
        let pos = self.pos();
        let n = self.nat("coordinate index")?;
        let idx = usize::try_from(&n).unwrap_or(usize::MAX);
        if idx >= 1 && idx <= self.arity {
            Ok(idx)
        } else {
            Err(CliError::Domain(format!(
                "coordinate index {n} out of range 1..={} (at position {pos})",
                self.arity
            )))
        }
    }

    fn parse_expr(&mut self) -> Result<ExprAst, CliError> {
        let mut terms = Vec::new();
        let negate = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            true
        } else {
            false
        };
        terms.push(self.parse_term(negate)?);
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let t = self.parse_term(false)?;
                    terms.push(t);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let t = self.parse_term(true)?;
                    terms.push(t);
                }
                _ => break,
            }
        }
        if terms.len() == 1 {
            Ok(terms.pop().unwrap())
        } else {
            Ok(ExprAst::Sum(terms))
        }
    }

    fn parse_term(&mut self, negate: bool) -> Result<ExprAst, CliError> {
        let mut factors = vec![self.parse_factor()?];
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    factors.push(self.parse_factor()?);
                }
                Some(Tok::Nat(_)) | Some(Tok::Word(_)) | Some(Tok::LParen) => {
                    factors.push(self.parse_factor()?);
                }
                _ => break,
            }
        }
        if negate {
            // fold the sign into a leading scalar
            if let ExprAst::Scalar(c) = &factors[0] {
                factors[0] = ExprAst::Scalar(-c.clone());
            } else {
                factors.insert(0, ExprAst::Scalar(idop::rational::rat(-1)));
            }
        }
        if factors.len() == 1 {
            Ok(factors.pop().unwrap())
        } else {
            Ok(ExprAst::Product(factors))
        }
    }

    fn parse_factor(&mut self) -> Result<ExprAst, CliError> {
        let atom = self.parse_atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let k = self.small_nat(MAX_POWER as u64, "exponent")? as u32;
            Ok(ExprAst::Power(Box::new(atom), k))
        } else {
            Ok(atom)
        }
    }

    fn parse_atom(&mut self) -> Result<ExprAst, CliError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Nat(n)) => {
                if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    let dpos = self.pos();
                    let d = self.nat("denominator")?;
                    if d.is_zero() {
                        return Err(CliError::Parse {
                            pos: dpos,
                            msg: "zero denominator".into(),
                        });
                    }
                    Ok(ExprAst::Scalar(Rational::new(n, d)))
                } else {
                    Ok(ExprAst::Scalar(Rational::from_integer(n)))
                }
            }
            Some(Tok::Word(w)) => match w.as_str() {
                "x" => Ok(ExprAst::Generator(GenKind::X, self.coord_index()?)),
                "d" => Ok(ExprAst::Generator(GenKind::D, self.coord_index()?)),
                "int" => Ok(ExprAst::Generator(GenKind::Int, self.coord_index()?)),
                "H" => Ok(ExprAst::Generator(GenKind::H, self.coord_index()?)),
                "e" => {
                    let coord = self.coord_index()?;
                    self.expect(Tok::LBracket, "'['")?;
                    let row = self.small_nat(MAX_INDEX, "matrix row")? as u32;
                    self.expect(Tok::Comma, "','")?;
                    let col = self.small_nat(MAX_INDEX, "matrix column")? as u32;
                    self.expect(Tok::RBracket, "']'")?;
                    Ok(ExprAst::MatrixUnit { coord, row, col })
                }
                _ => Err(CliError::Parse {
                    pos,
                    msg: format!("unknown generator '{w}'"),
                }),
            },
            Some(Tok::LParen) => {
                let e = self.parse_expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            _ => Err(CliError::Parse {
                pos,
                msg: "expected a rational, generator, matrix unit, or '('".into(),
            }),
        }
    }
}

/// Parse an operator expression for the given arity.
pub fn parse(arity: usize, text: &str) -> Result<ExprAst, CliError> {
    let lexer = lex(text)?;
    let mut p = Parser {
        toks: lexer.toks,
        cursor: 0,
        arity,
        end: text.len(),
    };
    if p.peek().is_none() {
        return Err(CliError::Parse {
            pos: 0,
            msg: "empty expression".into(),
        });
    }
    let e = p.parse_expr()?;
    if p.peek().is_some() {
        return Err(CliError::Parse {
            pos: p.pos(),
            msg: "trailing input".into(),
        });
    }
    Ok(e)
}

/// Parse an antichain literal like `{01,10}`; vectors list coordinate 1
/// first and must all have length equal to the arity.
pub fn parse_antichain(arity: usize, text: &str) -> Result<idop::IdealAc, CliError> {
    let t = text.trim();
    let inner = t
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| CliError::Parse {
            pos: 0,
            msg: "antichain literal must be braced, like {01,10}".into(),
        })?;
    let mut vectors: Vec<u16> = Vec::new();
    for part in inner.split(',') {
        let part = part.trim();
        if part.is_empty() {
            if inner.trim().is_empty() {
                break;
            }
            return Err(CliError::Parse {
                pos: 0,
                msg: "empty vector in antichain literal".into(),
            });
        }
        if part.len() != arity {
            return Err(CliError::Domain(format!(
                "vector '{part}' has length {}, arity is {arity}",
                part.len()
            )));
        }
        let mut mask = 0u16;
        for (i, c) in part.chars().enumerate() {
            match c {
                '0' => {}
                '1' => mask |= 1 << i,
                _ => {
                    return Err(CliError::Parse {
                        pos: 0,
                        msg: format!("vector '{part}' must be over {{0,1}}"),
                    })
                }
            }
        }
        vectors.push(mask);
    }
    Ok(idop::IdealAc::make(arity, vectors)?)
}

/// Parse a subset literal like `{1,3}` or `{}`.
pub fn parse_subset(arity: usize, text: &str) -> Result<idop::PrimeLabel, CliError> {
    let t = text.trim();
    let inner = t
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| CliError::Parse {
            pos: 0,
            msg: "subset literal must be braced, like {1,3}".into(),
        })?;
    let mut members = Vec::new();
    for part in inner.split(',') {
        let part = part.trim();
        if part.is_empty() {
            if inner.trim().is_empty() {
                break;
            }
            return Err(CliError::Parse {
                pos: 0,
                msg: "empty member in subset literal".into(),
            });
        }
        let i: usize = part.parse().map_err(|_| CliError::Parse {
            pos: 0,
            msg: format!("'{part}' is not a coordinate"),
        })?;
        members.push(i);
    }
    Ok(idop::PrimeLabel::from_members(arity, members)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use idop::rational::ratio;

    #[test]
    fn product_by_juxtaposition() {
        let got = parse(1, "d1 int1").unwrap();
        assert_eq!(
            got,
            ExprAst::Product(vec![
                ExprAst::Generator(GenKind::D, 1),
                ExprAst::Generator(GenKind::Int, 1),
            ])
        );
    }

    #[test]
    fn signs_fold_into_scalars() {
        let got = parse(1, "H1^2 - 3/2 e1[0,0]").unwrap();
        assert_eq!(
            got,
            ExprAst::Sum(vec![
                ExprAst::Power(Box::new(ExprAst::Generator(GenKind::H, 1)), 2),
                ExprAst::Product(vec![
                    ExprAst::Scalar(ratio(-3, 2)),
                    ExprAst::MatrixUnit {
                        coord: 1,
                        row: 0,
                        col: 0
                    },
                ]),
            ])
        );
    }

    #[test]
    fn matrix_units_multiply() {
        let ast = parse(1, "e1[2,5] e1[5,1]").unwrap();
        let op = ast.eval_operator(1).unwrap();
        assert_eq!(op, idop::Operator::mat_unit(1, 1, 2, 1).unwrap());
    }

    #[test]
    fn parenthesized_and_starred() {
        // an inverse pair: the product collapses to 1
        let a = parse(1, "(1 + e1[0,0]) * (1 - 1/2 e1[0,0])").unwrap();
        let op = a.eval_operator(1).unwrap();
        assert_eq!(op, idop::Operator::one(1));
        let b = parse(1, "(1 + e1[0,0]) (2 - H1)").unwrap();
        let direct = parse(1, "2 - H1 + 2 e1[0,0] - e1[0,0] H1").unwrap();
        assert_eq!(
            b.eval_operator(1).unwrap(),
            direct.eval_operator(1).unwrap()
        );
    }

    #[test]
    fn errors_carry_positions() {
        match parse(1, "d1 +") {
            Err(CliError::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse(1, "d1 ? d1") {
            Err(CliError::Parse { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(parse(1, "d2"), Err(CliError::Domain(_))));
        assert!(matches!(parse(1, "1/0"), Err(CliError::Parse { .. })));
    }

    #[test]
    fn antichain_literals() {
        let a = parse_antichain(2, "{01,10}").unwrap();
        assert_eq!(a, idop::IdealAc::maximal(2));
        assert_eq!(parse_antichain(2, "{}").unwrap(), idop::IdealAc::zero(2));
        assert!(matches!(
            parse_antichain(2, "{011}"),
            Err(CliError::Domain(_))
        ));
        assert!(parse_antichain(2, "01,10").is_err());
    }

    #[test]
    fn subset_literals() {
        let s = parse_subset(3, "{1,3}").unwrap();
        assert_eq!(s.members(), vec![1, 3]);
        assert!(parse_subset(3, "{}").unwrap().is_empty());
        assert!(matches!(parse_subset(2, "{3}"), Err(CliError::Domain(_))));
    }
}
