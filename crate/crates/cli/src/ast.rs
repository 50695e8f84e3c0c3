//! Expression trees for the surface syntax and their evaluation into
//! operators or polynomials.

use idop::operator::Operator;
use idop::poly::Polynomial;
use idop::rational::{rat, Rational};

use crate::CliError;

/// Evaluation refuses to grow intermediate results past this many terms.
const MAX_TERMS: usize = 100_000;

fn check_operator_size(op: Operator) -> Result<Operator, CliError> {
    if op.num_terms() > MAX_TERMS {
        return Err(CliError::Domain(format!(
            "expression expands to more than {MAX_TERMS} terms"
        )));
    }
    Ok(op)
}

fn check_polynomial_size(p: Polynomial) -> Result<Polynomial, CliError> {
    if p.terms().count() > MAX_TERMS {
        return Err(CliError::Domain(format!(
            "polynomial expands to more than {MAX_TERMS} terms"
        )));
    }
    Ok(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenKind {
    X,
    D,
    Int,
    H,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprAst {
    Sum(Vec<ExprAst>),
    /// Order is significant: the algebra is noncommutative.
    Product(Vec<ExprAst>),
    Power(Box<ExprAst>, u32),
    Scalar(Rational),
    Generator(GenKind, usize),
    MatrixUnit {
        coord: usize,
        row: u32,
        col: u32,
    },
}

impl ExprAst {
    /// Evaluate to a canonical-form operator of the given arity.
    pub fn eval_operator(&self, arity: usize) -> Result<Operator, CliError> {
        match self {
            ExprAst::Scalar(c) => Ok(Operator::scalar(arity, c.clone())),
            ExprAst::Generator(kind, i) => {
                let op = match kind {
                    GenKind::X => Operator::x(arity, *i),
                    GenKind::D => Operator::der(arity, *i),
                    GenKind::Int => Operator::integ(arity, *i),
                    GenKind::H => Operator::h(arity, *i),
                };
                Ok(op?)
            }
            ExprAst::MatrixUnit { coord, row, col } => {
                Ok(Operator::mat_unit(arity, *coord, *row, *col)?)
            }
            ExprAst::Power(base, k) => {
                let b = base.eval_operator(arity)?;
                let mut acc = Operator::one(arity);
                for step in 0..*k {
                    // budget the whole loop, not just the current size, so a
                    // slowly exploding power bails out early
                    let remaining = (*k - step) as usize;
                    if acc.num_terms().saturating_mul(b.num_terms()).saturating_mul(remaining)
                        > 2_000_000
                    {
                        return Err(CliError::Domain(
                            "power expands past the evaluation budget".into(),
                        ));
                    }
                    acc = check_operator_size(acc.mul(&b)?)?;
                }
                Ok(acc)
            }
            ExprAst::Product(factors) => {
                let mut acc = Operator::one(arity);
                for f in factors {
                    acc = check_operator_size(acc.mul(&f.eval_operator(arity)?)?)?;
                }
                Ok(acc)
            }
            ExprAst::Sum(terms) => {
                let mut acc = Operator::zero(arity);
                for t in terms {
                    acc = acc.add_scale(&rat(1), &t.eval_operator(arity)?)?;
                }
                Ok(acc)
            }
        }
    }

    /// Evaluate to a polynomial; only scalars and `x` generators are legal.
    pub fn eval_polynomial(&self, arity: usize) -> Result<Polynomial, CliError> {
        match self {
            ExprAst::Scalar(c) => Ok(Polynomial::one(arity).scale(c)),
            ExprAst::Generator(GenKind::X, i) => Ok(Polynomial::var(arity, *i)?),
            ExprAst::Generator(..) | ExprAst::MatrixUnit { .. } => Err(CliError::Parse {
                pos: 0,
                msg: "polynomial literals may only use x generators and scalars".into(),
            }),
            ExprAst::Power(base, k) => {
                let b = base.eval_polynomial(arity)?;
                let bsize = b.terms().count();
                let mut acc = Polynomial::one(arity);
                for step in 0..*k {
                    let remaining = (*k - step) as usize;
                    if acc
                        .terms()
                        .count()
                        .saturating_mul(bsize)
                        .saturating_mul(remaining)
                        > 2_000_000
                    {
                        return Err(CliError::Domain(
                            "power expands past the evaluation budget".into(),
                        ));
                    }
                    acc = check_polynomial_size(acc.mul(&b)?)?;
                }
                Ok(acc)
            }
            ExprAst::Product(factors) => {
                let mut acc = Polynomial::one(arity);
                for f in factors {
                    acc = check_polynomial_size(acc.mul(&f.eval_polynomial(arity)?)?)?;
                }
                Ok(acc)
            }
            ExprAst::Sum(terms) => {
                let mut acc = Polynomial::zero(arity);
                for t in terms {
                    acc = acc.add(&t.eval_polynomial(arity)?)?;
                }
                Ok(acc)
            }
        }
    }
}
