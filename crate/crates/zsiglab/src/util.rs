//! Small numeric helpers shared across modules.
//!
//! Real-valued outputs throughout the crate are IEEE doubles. Natural logs of
//! big integers are computed from the top 53 bits plus an exact power-of-two
//! shift, so the relative error is a few ulps (~1e-15) no matter how large the
//! operand. Downstream inequality checks always compare with an explicit slack
//! parameter, never exact equality of floats.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Default slack for float comparisons in inequality checkers.
pub const DEFAULT_SLACK: f64 = 1e-9;

/// Default cap on decimal digits of any orbit numerator/denominator.
pub const DEFAULT_DIGIT_CAP: usize = 100_000;

/// ln of a positive big integer, accurate to a few ulps.
pub fn ln_biguint(n: &BigUint) -> f64 {
    assert!(!n.is_zero(), "ln of zero");
    let bits = n.bits();
    if bits <= 53 {
        return (n.to_f64().expect("fits f64")).ln();
    }
    let shift = bits - 53;
    let top: BigUint = n >> shift;
    (top.to_f64().expect("53 bits fit f64")).ln() + (shift as f64) * std::f64::consts::LN_2
}

/// ln |n| for a nonzero big integer.
pub fn ln_bigint_abs(n: &BigInt) -> f64 {
    ln_biguint(n.magnitude())
}

/// ln |q| for a nonzero rational.
pub fn ln_ratio_abs(q: &BigRational) -> f64 {
    ln_bigint_abs(q.numer()) - ln_bigint_abs(q.denom())
}

/// log^+ t = max{0, ln t} for t >= 0, with log^+ 0 = 0.
pub fn log_plus(t: f64) -> f64 {
    if t <= 1.0 {
        0.0
    } else {
        t.ln()
    }
}

/// Decimal digit count of a big integer (0 counts as one digit).
pub fn decimal_digits(n: &BigInt) -> usize {
    if n.is_zero() {
        return 1;
    }
    // bits * log10(2), corrected to an exact count near the boundary
    let approx = (n.bits() as f64 * std::f64::consts::LOG10_2) as usize;
    let mut p = BigUint::from(10u32).pow(approx as u32);
    let mag = n.magnitude();
    let mut digits = approx;
    while &p <= mag {
        p *= 10u32;
        digits += 1;
    }
    digits
}

/// Nearest integer to a/b (ties rounded away from zero).
pub fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    assert!(!b.is_zero());
    let two = BigInt::from(2);
    let (q, r) = num_integer::Integer::div_rem(a, b);
    if (&r * &two).abs() >= b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Nearest integer to a rational (ties away from zero).
pub fn round_rational(q: &BigRational) -> BigInt {
    div_round(q.numer(), q.denom())
}

/// Exact square test for a nonnegative big integer, returning the root.
pub fn exact_sqrt(n: &BigUint) -> Option<BigUint> {
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Exact square test for a rational; returns the nonnegative root if square.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let num = exact_sqrt(q.numer().magnitude())?;
    let den = exact_sqrt(q.denom().magnitude())?;
    Some(BigRational::new(BigInt::from(num), BigInt::from(den)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn ln_large_matches_shift() {
        let n = BigUint::from(2u32).pow(1024);
        let r = ln_biguint(&n);
        assert!((r - 1024.0 * std::f64::consts::LN_2).abs() < 1e-9);
    }

    #[test]
    fn digit_count() {
        assert_eq!(decimal_digits(&BigInt::from(0)), 1);
        assert_eq!(decimal_digits(&BigInt::from(9)), 1);
        assert_eq!(decimal_digits(&BigInt::from(10)), 2);
        assert_eq!(decimal_digits(&BigInt::from(-99999)), 5);
        assert_eq!(decimal_digits(&BigInt::from(100000)), 6);
    }

    #[test]
    fn rounding() {
        assert_eq!(div_round(&BigInt::from(7), &BigInt::from(2)), BigInt::from(4));
        assert_eq!(div_round(&BigInt::from(-7), &BigInt::from(2)), BigInt::from(-4));
        assert_eq!(div_round(&BigInt::from(6), &BigInt::from(3)), BigInt::from(2));
        assert_eq!(div_round(&BigInt::from(5), &BigInt::from(3)), BigInt::from(2));
    }

    #[test]
    fn sqrt_tests() {
        assert_eq!(exact_sqrt(&BigUint::from(49u32)), Some(BigUint::from(7u32)));
        assert_eq!(exact_sqrt(&BigUint::from(48u32)), None);
        let q = BigRational::new(BigInt::from(9), BigInt::from(4));
        assert_eq!(rational_sqrt(&q), Some(BigRational::new(BigInt::from(3), BigInt::from(2))));
        assert!(rational_sqrt(&-q).is_none());
        assert!(rational_sqrt(&BigRational::one()).is_some());
    }
}
