//! Small helpers around the arbitrary-precision rational scalar.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Pow, Signed, Zero};

use crate::{Exponent, Rational};

/// Integer as a rational.
pub fn rat_i(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Fraction `n/d` as a rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as an exponent.
pub fn exp_i(n: i64) -> Exponent {
    Exponent::from_integer(n)
}

/// Fraction `n/d` as an exponent. Panics if `d == 0`.
pub fn exp(n: i64, d: i64) -> Exponent {
    Exponent::new(n, d)
}

/// Canonical display: `p` for integers, `p/q` otherwise.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical display for exponents, same convention as [`fmt_rational`].
pub fn fmt_exponent(e: &Exponent) -> String {
    if *e.denom() == 1 {
        e.numer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

/// Exact `n`-th root of a rational, if one exists.
///
/// Both numerator and denominator must be perfect `n`-th powers (the sign
/// of the numerator must admit the root for even `n`).
pub fn nth_root_exact(r: &Rational, n: u32) -> Option<Rational> {
    assert!(n >= 1);
    if n == 1 {
        return Some(r.clone());
    }
    if r.is_zero() {
        return Some(Rational::zero());
    }
    if r.is_negative() && n.is_multiple_of(2) {
        return None;
    }
    let root_abs = |x: &BigInt| -> Option<BigInt> {
        let mag = x.abs();
        let root = mag.nth_root(n);
        if Pow::pow(&root, n) == mag {
            Some(root)
        } else {
            None
        }
    };
    let num = root_abs(r.numer())?;
    let den = root_abs(r.denom())?;
    let num = if r.is_negative() { -num } else { num };
    Some(Rational::new(num, den))
}

/// Least common multiple of two positive integers.
pub fn lcm_u32(a: u32, b: u32) -> u32 {
    (a as u64).lcm(&(b as u64)) as u32
}

/// lcm(1..=d), with lcm of the empty range taken to be 1.
pub fn lcm_1_to(d: u32) -> u32 {
    (1..=d).fold(1u32, lcm_u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nth_root_of_perfect_powers() {
        assert_eq!(nth_root_exact(&rat_i(4), 2), Some(rat_i(2)));
        assert_eq!(nth_root_exact(&rat(8, 27), 3), Some(rat(2, 3)));
        assert_eq!(nth_root_exact(&rat_i(-8), 3), Some(rat_i(-2)));
        assert_eq!(nth_root_exact(&rat_i(2), 2), None);
        assert_eq!(nth_root_exact(&rat_i(-4), 2), None);
    }

    #[test]
    fn lcm_ranges() {
        assert_eq!(lcm_1_to(0), 1);
        assert_eq!(lcm_1_to(1), 1);
        assert_eq!(lcm_1_to(4), 12);
        assert_eq!(lcm_1_to(6), 60);
    }

    #[test]
    fn rational_formatting() {
        assert_eq!(fmt_rational(&rat_i(5)), "5");
        assert_eq!(fmt_rational(&rat(-3, 2)), "-3/2");
        assert_eq!(fmt_exponent(&exp(1, 2)), "1/2");
    }
}
