//! Growth of the standard filtration: exact dimensions of the spans of
//! short words in the generators `d_i, H_i, int_i`, and the log-log slope
//! used as a desk-scale Gelfand-Kirillov estimate.

use crate::error::{Error, Result};
use crate::linalg::SpanBasis;
use crate::operator::{Monomial, Operator};
use crate::rational::Rational;
use std::collections::BTreeMap;

/// Dimensions `dim span{words of length <= i}` for `i = 0..=i_max`, computed
/// by iterating `V_{i+1} = V_i + sum_g g V_i` over an exact echelon basis.
pub fn filtration_dims(arity: usize, i_max: usize) -> Result<Vec<usize>> {
    if arity == 0 || arity * i_max > 16 {
        return Err(Error::ResourceGuard(format!(
            "filtration guard: need arity * i_max <= 16, got {arity} * {i_max}"
        )));
    }
    let mut gens: Vec<Operator> = Vec::with_capacity(3 * arity);
    for i in 1..=arity {
        gens.push(Operator::der(arity, i)?);
        gens.push(Operator::h(arity, i)?);
        gens.push(Operator::integ(arity, i)?);
    }

    let to_vec = |op: &Operator| -> BTreeMap<Monomial, Rational> {
        op.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
    };

    let mut basis = SpanBasis::new();
    let mut layer: Vec<Operator> = vec![Operator::one(arity)];
    basis.insert(to_vec(&layer[0]));
    let mut dims = vec![basis.rank()];

    for _ in 0..i_max {
        let mut next_layer = Vec::new();
        for v in &layer {
            for g in &gens {
                let w = g.mul(v)?;
                if basis.insert(to_vec(&w)) {
                    next_layer.push(w);
                }
            }
        }
        dims.push(basis.rank());
        layer = next_layer;
    }
    Ok(dims)
}

/// Least-squares slope of `ln dim` against `ln i` over `i = lo..=hi`.
pub fn log_log_slope(dims: &[usize], lo: usize, hi: usize) -> f64 {
    let pts: Vec<(f64, f64)> = (lo..=hi)
        .filter(|&i| i < dims.len() && i > 0 && dims[i] > 0)
        .map(|i| ((i as f64).ln(), (dims[i] as f64).ln()))
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let num: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let den: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    num / den
}
