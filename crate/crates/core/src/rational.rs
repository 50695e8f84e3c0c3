//! The ground field: exact arbitrary-precision rationals.
//!
//! `BigRational` already keeps every value in lowest terms with a positive
//! denominator, which is exactly the normal form the rest of the crate
//! relies on for canonical-form uniqueness.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use num_rational::BigRational as Rational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d` as a rational. Panics on `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_zero(r: &Rational) -> bool {
    r.is_zero()
}

pub fn is_one(r: &Rational) -> bool {
    r.is_one()
}

/// `base^exp` for an integer base.
pub fn int_pow(base: i64, exp: u32) -> BigInt {
    BigInt::from(base).pow(exp)
}

/// Binomial coefficient `C(n, k)`.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k {
        num *= BigInt::from(n - j);
        den *= BigInt::from(j + 1);
    }
    num / den
}

/// `a! / b!` as a rational, for arbitrary naturals `a`, `b`.
pub fn factorial_ratio(a: u32, b: u32) -> Rational {
    if a >= b {
        let mut p = BigInt::one();
        for t in (b + 1)..=a {
            p *= BigInt::from(t);
        }
        Rational::from_integer(p)
    } else {
        factorial_ratio(b, a).recip()
    }
}

/// Evaluate a dense coefficient list `p[0] + p[1] t + ...` at an integer `t`.
pub fn eval_at_int(coeffs: &[Rational], t: i64) -> Rational {
    let t = rat(t);
    let mut acc = Rational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * &t + c;
    }
    acc
}

/// Render a rational the way the CLI prints scalars (`-3/2`, `7`).
pub fn display(r: &Rational) -> String {
    r.to_string()
}

/// Absolute value.
pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(3, 7), BigInt::from(0));
    }

    #[test]
    fn factorial_ratios() {
        assert_eq!(factorial_ratio(5, 3), rat(20));
        assert_eq!(factorial_ratio(3, 5), ratio(1, 20));
        assert_eq!(factorial_ratio(4, 4), rat(1));
    }

    #[test]
    fn poly_eval() {
        // 1 + 2t + 3t^2 at t = -2
        let p = [rat(1), rat(2), rat(3)];
        assert_eq!(eval_at_int(&p, -2), rat(9));
    }
}
