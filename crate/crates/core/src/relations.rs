//! The defining relation suite: every generator relation of the presentation
//! normalized through the rewrite engine. All of them must come out zero;
//! anything else means the canonical-form arithmetic is broken.

use crate::error::Result;
use crate::operator::Operator;

fn commutator(a: &Operator, b: &Operator) -> Result<Operator> {
    a.mul(b)?.sub(&b.mul(a)?)
}

/// Normalize every defining relation for the given arity. Returns the number
/// of relations checked and descriptions of any that failed to normalize to
/// zero.
pub fn check_defining_relations(arity: usize) -> Result<(usize, Vec<String>)> {
    let mut total = 0usize;
    let mut failures = Vec::new();
    let one = Operator::one(arity);
    let mut push = |name: String, op: Operator| {
        total += 1;
        if !op.is_zero() {
            failures.push(name);
        }
    };

    for i in 1..=arity {
        let d = Operator::der(arity, i)?;
        let int = Operator::integ(arity, i)?;
        let h = Operator::h(arity, i)?;
        push(format!("d{i} int{i} = 1"), d.mul(&int)?.sub(&one)?);
        push(
            format!("[H{i}, int{i}] = int{i}"),
            commutator(&h, &int)?.sub(&int)?,
        );
        push(
            format!("[H{i}, d{i}] = -d{i}"),
            commutator(&h, &d)?.add(&d)?,
        );
        let proj = one.sub(&int.mul(&d)?)?; // 1 - int d
        push(
            format!("H{i} (1 - int{i} d{i}) = 1 - int{i} d{i}"),
            h.mul(&proj)?.sub(&proj)?,
        );
        push(
            format!("(1 - int{i} d{i}) H{i} = 1 - int{i} d{i}"),
            proj.mul(&h)?.sub(&proj)?,
        );
    }
    for i in 1..=arity {
        for j in (i + 1)..=arity {
            let gens_i = [
                ("d", Operator::der(arity, i)?),
                ("int", Operator::integ(arity, i)?),
                ("H", Operator::h(arity, i)?),
            ];
            let gens_j = [
                ("d", Operator::der(arity, j)?),
                ("int", Operator::integ(arity, j)?),
                ("H", Operator::h(arity, j)?),
            ];
            for (na, a) in &gens_i {
                for (nb, b) in &gens_j {
                    push(format!("[{na}{i}, {nb}{j}] = 0"), commutator(a, b)?);
                }
            }
        }
    }
    Ok((total, failures))
}
