//! Dense univariate polynomial helpers, generic over the coefficient
//! scalar via `num-traits`.
//!
//! Polynomials are coefficient vectors with no trailing zeros (the zero
//! polynomial is the empty vector). Used with [`crate::Rational`]
//! coefficients for cyclotomic polynomial arithmetic and for the
//! univariate cross-multiplication checks that back rational
//! specializations.

use num_traits::{One, Zero};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Scalar bound for the helpers in this module: an exact field element.
pub trait FieldScalar:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
}

impl<T> FieldScalar for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
{
}

/// Drop trailing zero coefficients.
pub fn trim<T: FieldScalar>(coeffs: &mut Vec<T>) {
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
}

pub fn is_zero<T: FieldScalar>(p: &[T]) -> bool {
    p.iter().all(|c| c.is_zero())
}

pub fn add<T: FieldScalar>(a: &[T], b: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] = out[i].clone() + c.clone();
    }
    for (i, c) in b.iter().enumerate() {
        out[i] = out[i].clone() + c.clone();
    }
    trim(&mut out);
    out
}

pub fn sub<T: FieldScalar>(a: &[T], b: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] = out[i].clone() + c.clone();
    }
    for (i, c) in b.iter().enumerate() {
        out[i] = out[i].clone() - c.clone();
    }
    trim(&mut out);
    out
}

pub fn mul<T: FieldScalar>(a: &[T], b: &[T]) -> Vec<T> {
    if is_zero(a) || is_zero(b) {
        return Vec::new();
    }
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if cb.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].clone() + ca.clone() * cb.clone();
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder of `a` by `b`. Panics on zero divisor.
pub fn div_rem<T: FieldScalar>(a: &[T], b: &[T]) -> (Vec<T>, Vec<T>) {
    assert!(!is_zero(b), "polynomial division by zero");
    let mut rem: Vec<T> = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![T::zero(); rem.len() - db];
    while rem.len() > db {
        let dr = rem.len() - 1;
        let factor = rem[dr].clone() / lead.clone();
        let shift = dr - db;
        quot[shift] = factor.clone();
        for (i, cb) in b.iter().enumerate() {
            rem[shift + i] = rem[shift + i].clone() - factor.clone() * cb.clone();
        }
        trim(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    trim(&mut quot);
    (quot, rem)
}

/// Evaluate at a point by Horner's rule.
pub fn eval<T: FieldScalar>(p: &[T], x: &T) -> T {
    let mut acc = T::zero();
    for c in p.iter().rev() {
        acc = acc * x.clone() + c.clone();
    }
    acc
}

/// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
pub fn extended_gcd<T: FieldScalar>(a: &[T], b: &[T]) -> (Vec<T>, Vec<T>, Vec<T>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0 = vec![T::one()];
    let mut s1: Vec<T> = Vec::new();
    let mut t0: Vec<T> = Vec::new();
    let mut t1 = vec![T::one()];
    while !is_zero(&r1) {
        let (q, r) = div_rem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        let t = sub(&t0, &mul(&q, &t1));
        r0 = std::mem::take(&mut r1);
        r1 = r;
        s0 = std::mem::take(&mut s1);
        s1 = s;
        t0 = std::mem::take(&mut t1);
        t1 = t;
    }
    // Normalize to a monic gcd.
    if let Some(lead) = r0.last().cloned() {
        if !lead.is_one() {
            for c in r0.iter_mut() {
                *c = c.clone() / lead.clone();
            }
            for c in s0.iter_mut() {
                *c = c.clone() / lead.clone();
            }
            for c in t0.iter_mut() {
                *c = c.clone() / lead.clone();
            }
        }
    }
    (r0, s0, t0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat_i;
    use crate::Rational;

    fn p(coeffs: &[i64]) -> Vec<Rational> {
        let mut v: Vec<Rational> = coeffs.iter().map(|&c| rat_i(c)).collect();
        trim(&mut v);
        v
    }

    #[test]
    fn division_with_remainder() {
        // (x^3 - 1) = (x - 1)(x^2 + x + 1)
        let (q, r) = div_rem(&p(&[-1, 0, 0, 1]), &p(&[-1, 1]));
        assert_eq!(q, p(&[1, 1, 1]));
        assert!(r.is_empty());

        let (q, r) = div_rem(&p(&[1, 0, 1]), &p(&[1, 1]));
        assert_eq!(q, p(&[-1, 1]));
        assert_eq!(r, p(&[2]));
    }

    #[test]
    fn extended_gcd_bezout() {
        let a = p(&[-1, 0, 1]); // x^2 - 1
        let b = p(&[1, 1]); // x + 1
        let (g, s, t) = extended_gcd(&a, &b);
        assert_eq!(g, p(&[1, 1]));
        let lhs = add(&mul(&s, &a), &mul(&t, &b));
        assert_eq!(lhs, g);
    }
}
