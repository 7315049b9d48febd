//! Elements of cyclotomic number fields over the rationals.
//!
//! A [`Cyclotomic`] is a polynomial in a primitive `M`-th root of unity,
//! reduced modulo the `M`-th cyclotomic polynomial. Values carry their own
//! order `M`; mixed-order arithmetic lifts to the least common multiple,
//! and results that land in the rationals are stored at order 1, so plain
//! rational coefficients never pay for field arithmetic.
//!
//! Cyclotomic polynomials are computed by dividing `x^M - 1` by the
//! cyclotomic polynomials of the proper divisors of `M`, and memoized in a
//! process-wide synchronized table.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Signed, Zero};

use crate::algebra::poly;
use crate::algebra::rational::{fmt_rational, lcm_u32, rat_i};
use crate::{Exponent, Rational};

/// Euler's totient.
pub fn euler_phi(m: u32) -> u32 {
    assert!(m >= 1);
    let mut n = m;
    let mut result = m;
    let mut p = 2u32;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn cyclo_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<Rational>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<Rational>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The `m`-th cyclotomic polynomial as a dense coefficient vector.
pub fn cyclotomic_polynomial(m: u32) -> Arc<Vec<Rational>> {
    assert!(m >= 1);
    if let Some(hit) = cyclo_cache().lock().unwrap().get(&m) {
        return hit.clone();
    }
    let value = if m == 1 {
        vec![rat_i(-1), rat_i(1)]
    } else {
        // x^m - 1 divided by the cyclotomic polynomials of proper divisors.
        let mut num = vec![Rational::zero(); (m + 1) as usize];
        num[0] = rat_i(-1);
        num[m as usize] = rat_i(1);
        let mut result = num;
        for d in 1..m {
            if m.is_multiple_of(d) {
                let phi_d = cyclotomic_polynomial(d);
                let (q, r) = poly::div_rem(&result, &phi_d);
                debug_assert!(r.is_empty(), "cyclotomic division must be exact");
                result = q;
            }
        }
        result
    };
    debug_assert_eq!(value.len() as u32 - 1, euler_phi(m));
    let arc = Arc::new(value);
    cyclo_cache().lock().unwrap().insert(m, arc.clone());
    arc
}

/// An element of the `order`-th cyclotomic field.
///
/// Invariants: `coeffs.len() == euler_phi(order)` exactly (zero-padded),
/// and any value lying in the rationals is stored at order 1. Two equal
/// values may still carry different orders (e.g. a primitive cube root
/// seen inside the 12th field); equality lifts to a common order.
#[derive(Clone)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    fn make(order: u32, mut coeffs: Vec<Rational>) -> Self {
        let phi = euler_phi(order) as usize;
        coeffs.resize(phi, Rational::zero());
        let mut value = Cyclotomic { order, coeffs };
        value.descend();
        value
    }

    /// Collapse to order 1 when the value is rational. Fields with
    /// `phi(order) == 1` (orders 1 and 2) are the rationals already.
    fn descend(&mut self) {
        if self.order == 1 {
            return;
        }
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            self.coeffs.truncate(1);
            if self.coeffs.is_empty() {
                self.coeffs.push(Rational::zero());
            }
            self.order = 1;
        }
    }

    pub fn zero() -> Self {
        Cyclotomic {
            order: 1,
            coeffs: vec![Rational::zero()],
        }
    }

    pub fn one() -> Self {
        Cyclotomic {
            order: 1,
            coeffs: vec![Rational::one()],
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic {
            order: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(rat_i(n))
    }

    /// The root of unity `e^{2 pi i t}` for a rational turn `t`.
    pub fn root_of_unity(turn: Exponent) -> Self {
        let turn = super::monomial::normalize_turn(turn);
        let order = *turn.denom() as u32;
        let power = *turn.numer();
        Self::reduce_raw(&[(power, Rational::one())], order)
    }

    /// Canonical representative of `sum coeff * zeta^power` modulo the
    /// `order`-th cyclotomic polynomial. Powers may be any integers; they
    /// are folded modulo `order` first.
    pub fn reduce_raw(raw: &[(i64, Rational)], order: u32) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        let m = order as i64;
        let mut dense = vec![Rational::zero(); order as usize];
        for (power, coeff) in raw {
            let k = power.rem_euclid(m) as usize;
            dense[k] += coeff;
        }
        let phi_m = cyclotomic_polynomial(order);
        let (_, rem) = poly::div_rem(&dense, &phi_m);
        Cyclotomic::make(order, rem)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.order == 1 && self.coeffs[0].is_one()
    }

    /// The rational value, if the element lies in the ground field.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.order == 1 {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Re-express in the `target`-th field; `order` must divide `target`.
    pub fn lift(&self, target: u32) -> Self {
        assert!(target.is_multiple_of(self.order), "lift target must be a multiple");
        if target == self.order {
            return self.clone();
        }
        let stride = (target / self.order) as i64;
        let raw: Vec<(i64, Rational)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as i64 * stride, c.clone()))
            .collect();
        Self::reduce_raw(&raw, target)
    }

    fn binop(&self, other: &Self, f: impl Fn(&[Rational], &[Rational]) -> Vec<Rational>) -> Self {
        let target = lcm_u32(self.order, other.order);
        let a = self.lift(target);
        let b = other.lift(target);
        let raw = f(&a.coeffs, &b.coeffs);
        if raw.len() as u32 > euler_phi(target) {
            let phi_m = cyclotomic_polynomial(target);
            let (_, rem) = poly::div_rem(&raw, &phi_m);
            Cyclotomic::make(target, rem)
        } else {
            Cyclotomic::make(target, raw)
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.order == 1 && other.order == 1 {
            return Cyclotomic::from_rational(&self.coeffs[0] + &other.coeffs[0]);
        }
        self.binop(other, poly::add)
    }

    pub fn sub(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.order == 1 && other.order == 1 {
            return Cyclotomic::from_rational(&self.coeffs[0] - &other.coeffs[0]);
        }
        self.binop(other, poly::sub)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Cyclotomic::zero();
        }
        if self.order == 1 && other.order == 1 {
            return Cyclotomic::from_rational(&self.coeffs[0] * &other.coeffs[0]);
        }
        if self.order == 1 {
            return other.scale(&self.coeffs[0]);
        }
        if other.order == 1 {
            return self.scale(&other.coeffs[0]);
        }
        self.binop(other, poly::mul)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Cyclotomic::zero();
        }
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Field inverse. Returns `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.order == 1 {
            return Some(Cyclotomic::from_rational(self.coeffs[0].recip()));
        }
        let phi_m = cyclotomic_polynomial(self.order);
        let mut poly_self = self.coeffs.clone();
        poly::trim(&mut poly_self);
        let (g, s, _) = poly::extended_gcd(&poly_self, &phi_m);
        debug_assert!(g.len() == 1 && g[0].is_one(), "cyclotomic polynomial is irreducible");
        let (_, rem) = poly::div_rem(&s, &phi_m);
        Some(Cyclotomic::make(self.order, rem))
    }

    /// If this value is a root of unity, return its turn in `[0, 1)`.
    pub fn as_root_of_unity(&self) -> Option<Exponent> {
        if self.is_zero() {
            return None;
        }
        // Any root of unity expressible here has order dividing lcm(2, M).
        let probe_order = lcm_u32(2, self.order);
        for k in 0..probe_order {
            let turn = super::monomial::normalize_turn(Exponent::new(k as i64, probe_order as i64));
            if *self == Cyclotomic::root_of_unity(turn) {
                return Some(turn);
            }
        }
        None
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let target = lcm_u32(self.order, other.order);
        self.lift(target).coeffs == other.lift(target).coeffs
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{}", fmt_rational(r));
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if k == 0 {
                write!(f, "{}", fmt_rational(&mag))?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", fmt_rational(&mag))?;
                }
                if k == 1 {
                    write!(f, "zeta{}", self.order)?;
                } else {
                    write!(f, "zeta{}^{}", self.order, k)?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{exp, exp_i, rat, rat_i};

    #[test]
    fn totient_values() {
        let expected = [1u32, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4];
        for (m, phi) in (1u32..=12).zip(expected) {
            assert_eq!(euler_phi(m), phi, "phi({m})");
        }
    }

    #[test]
    fn cyclotomic_polynomials_small_orders() {
        let as_i64 = |m: u32| -> Vec<i64> {
            cyclotomic_polynomial(m)
                .iter()
                .map(|c| {
                    assert!(c.denom().is_one());
                    i64::try_from(c.numer().clone()).unwrap()
                })
                .collect()
        };
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(2), vec![1, 1]);
        assert_eq!(as_i64(3), vec![1, 1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn reduce_square_of_zeta2() {
        // zeta_2^2 = 1
        let v = Cyclotomic::reduce_raw(&[(2, rat_i(1))], 2);
        assert!(v.is_one());
    }

    #[test]
    fn reduce_full_sum_order_four() {
        // 1 + zeta + zeta^2 + zeta^3 reduces to 0 modulo x^2 + 1:
        // zeta^2 = -1 and zeta^3 = -zeta, so the sum telescopes away.
        let raw: Vec<(i64, Rational)> = (0..4).map(|k| (k, rat_i(1))).collect();
        let v = Cyclotomic::reduce_raw(&raw, 4);
        assert!(v.is_zero());
    }

    #[test]
    fn reduce_cube_of_zeta3() {
        let v = Cyclotomic::reduce_raw(&[(3, rat_i(1))], 3);
        assert!(v.is_one());
    }

    #[test]
    fn reduction_is_idempotent() {
        let v = Cyclotomic::reduce_raw(&[(1, rat_i(2)), (5, rat(1, 3))], 12);
        let raw: Vec<(i64, Rational)> = v
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| (k as i64, c.clone()))
            .collect();
        let again = Cyclotomic::reduce_raw(&raw, 12);
        assert_eq!(v, again);
    }

    #[test]
    fn mixed_order_equality() {
        // zeta_12^4 is a primitive cube root of unity.
        let in_twelfth = Cyclotomic::reduce_raw(&[(4, rat_i(1))], 12);
        let in_third = Cyclotomic::root_of_unity(exp(1, 3));
        assert_eq!(in_twelfth, in_third);
        assert_ne!(in_third, Cyclotomic::one());
    }

    #[test]
    fn minus_one_collapses_to_rational() {
        let v = Cyclotomic::root_of_unity(exp(1, 2));
        assert_eq!(v.order(), 1);
        assert_eq!(v.as_rational(), Some(&rat_i(-1)));
    }

    #[test]
    fn inverse_of_units() {
        let z = Cyclotomic::root_of_unity(exp(1, 12));
        let w = Cyclotomic::one().sub(&z); // 1 - zeta_12 is a unit
        let inv = w.inverse().unwrap();
        assert!(w.mul(&inv).is_one());
        assert!(Cyclotomic::zero().inverse().is_none());
    }

    #[test]
    fn root_of_unity_detection() {
        let z = Cyclotomic::root_of_unity(exp(5, 12));
        assert_eq!(z.as_root_of_unity(), Some(exp(5, 12)));
        let not_root = Cyclotomic::from_integer(2);
        assert_eq!(not_root.as_root_of_unity(), None);
        // -1 is stored rationally but is still the half turn.
        assert_eq!(
            Cyclotomic::from_integer(-1).as_root_of_unity(),
            Some(exp(1, 2))
        );
        assert_eq!(Cyclotomic::one().as_root_of_unity(), Some(exp_i(0)));
    }
}
