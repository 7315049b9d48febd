//! Rational specialization of q-functions: substitute exact rational
//! values for the torus characters and keep `q` symbolic.
//!
//! This gives an independent univariate route for checking identities:
//! two specialized functions are compared by cross-multiplication of
//! dense polynomials over the rationals, sharing no code with the
//! multivariate cross-multiplication path.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::laurent::LaurentPolynomial;
use crate::algebra::poly;
use crate::Rational;

use super::QFunction;

/// A univariate rational function of `q` over the rationals, with the
/// denominator kept as factors `(1 - c q^a)^mult`.
#[derive(Clone, Debug)]
pub struct RationalQFunction {
    num: BTreeMap<i64, Rational>,
    den: Vec<(u32, Rational, u32)>,
}

impl QFunction {
    /// Substitute rational values for the characters. Returns `None`
    /// when a fractional exponent has no exact rational root, a
    /// coefficient does not lie in the rationals, or a scalar
    /// denominator factor vanishes at the chosen point.
    pub fn specialize_rational(&self, values: &[Rational]) -> Option<RationalQFunction> {
        assert_eq!(values.len(), self.nvars());
        // Scalar part of the denominator evaluates to one constant.
        let mut den_const = LaurentPolynomial::from_monomial(self.den_unit().clone())
            .eval_rational(values)?;
        for (nu, &mult) in self.den_scalar() {
            let v = LaurentPolynomial::one_minus(nu).eval_rational(values)?;
            for _ in 0..mult {
                den_const *= &v;
            }
        }
        if den_const.is_zero() {
            return None;
        }
        let inv = den_const.recip();
        let mut num = BTreeMap::new();
        for (k, c) in self.num_terms() {
            let v = c.eval_rational(values)? * &inv;
            if !v.is_zero() {
                num.insert(*k, v);
            }
        }
        let mut den = Vec::new();
        for (factor, &mult) in self.den_q() {
            let base = LaurentPolynomial::from_monomial(factor.base().monomial().clone())
                .scale(&factor.base().zeta_part())
                .eval_rational(values)?;
            den.push((factor.qpow(), base, mult));
        }
        Some(RationalQFunction { num, den })
    }
}

impl RationalQFunction {
    /// Numerator as a dense polynomial together with its power offset.
    fn dense_num(&self) -> (i64, Vec<Rational>) {
        if self.num.is_empty() {
            return (0, Vec::new());
        }
        let lo = *self.num.keys().next().unwrap();
        let hi = *self.num.keys().last().unwrap();
        let mut out = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (k, c) in &self.num {
            out[(k - lo) as usize] = c.clone();
        }
        (lo, out)
    }

    fn dense_den(&self) -> Vec<Rational> {
        let mut acc = vec![Rational::one()];
        for (a, c, mult) in &self.den {
            let mut factor = vec![Rational::zero(); *a as usize + 1];
            factor[0] = Rational::one();
            factor[*a as usize] = -c.clone();
            for _ in 0..*mult {
                acc = poly::mul(&acc, &factor);
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    /// Exact equality by cross-multiplication of dense polynomials.
    pub fn eq_rational(&self, other: &Self) -> bool {
        let (lo_a, na) = self.dense_num();
        let (lo_b, nb) = other.dense_num();
        let da = self.dense_den();
        let db = other.dense_den();
        let mut lhs = poly::mul(&na, &db);
        let mut rhs = poly::mul(&nb, &da);
        // align the Laurent offsets
        let shift = lo_a - lo_b;
        if shift > 0 {
            let mut padded = vec![Rational::zero(); shift as usize];
            padded.extend(lhs);
            lhs = padded;
        } else if shift < 0 {
            let mut padded = vec![Rational::zero(); (-shift) as usize];
            padded.extend(rhs);
            rhs = padded;
        }
        poly::trim(&mut lhs);
        poly::trim(&mut rhs);
        lhs == rhs
    }

    /// Evaluate at a rational `q`, if no denominator factor vanishes.
    pub fn eval_q(&self, q: &Rational) -> Option<Rational> {
        let mut den = Rational::one();
        for (a, c, mult) in &self.den {
            let factor = Rational::one() - c * q.pow(*a as i32);
            if factor.is_zero() {
                return None;
            }
            for _ in 0..*mult {
                den *= &factor;
            }
        }
        let mut num = Rational::zero();
        for (k, c) in &self.num {
            num += c * q.pow(i32::try_from(*k).expect("power fits i32"));
        }
        Some(num / den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::monomial::{Monomial, ZetaMonomial};
    use crate::algebra::rational::{rat, rat_i};
    use crate::qfunc::QFactor;

    #[test]
    fn specialization_and_evaluation() {
        // f = (1 - q)/(1 - q L0/L1) at L0 = 4, L1 = 2
        let lam = ZetaMonomial::untwisted(Monomial::var(2, 0).div(&Monomial::var(2, 1)));
        let f = QFunction::dilaton(2)
            .mul(&QFunction::one_over_factors(2, [QFactor::new(1, lam)]));
        let specialized = f
            .specialize_rational(&[rat_i(4), rat_i(2)])
            .unwrap();
        // at q = 1/3: (1 - 1/3)/(1 - 2/3) = 2
        assert_eq!(specialized.eval_q(&rat(1, 3)), Some(rat_i(2)));
        // pole of the specialized function: q = 1/2
        assert_eq!(specialized.eval_q(&rat(1, 2)), None);
    }

    #[test]
    fn cross_multiplied_equality() {
        // (1 - q^2)/(1 - q) == 1 + q after specialization
        let lhs = {
            let f = QFunction::one_over_factors(2, [QFactor::unity(2, 1)]);
            let num = QFunction::one(2).sub(&QFunction::q_power(2, 2));
            num.mul(&f)
        };
        let rhs = QFunction::one(2).add(&QFunction::q_power(2, 1));
        let a = lhs.specialize_rational(&[rat_i(3), rat_i(5)]).unwrap();
        let b = rhs.specialize_rational(&[rat_i(3), rat_i(5)]).unwrap();
        assert!(a.eq_rational(&b));
        let c = QFunction::one(2)
            .specialize_rational(&[rat_i(3), rat_i(5)])
            .unwrap();
        assert!(!a.eq_rational(&c));
    }
}
