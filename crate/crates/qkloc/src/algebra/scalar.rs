//! Fractions of Laurent polynomials whose denominators are kept as a
//! monomial unit times a multiset of binomial factors `(1 - nu)`.
//!
//! Denominators are never expanded or GCD-reduced: cancellation is only
//! ever attempted factor by factor via exact binomial division, and
//! equality always falls back to cross-multiplication, so no multivariate
//! GCD is needed anywhere.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::algebra::cyclotomic::Cyclotomic;
use crate::algebra::laurent::LaurentPolynomial;
use crate::algebra::monomial::{Monomial, ZetaMonomial};
use crate::error::{Error, Result};
use crate::Rational;

/// Multiset of binomial factors, keyed by base monomial with multiplicity.
pub type FactorMultiset = BTreeMap<ZetaMonomial, u32>;

/// Insert a factor, rejecting the identity base (whose binomial is zero).
pub fn factor_insert(den: &mut FactorMultiset, nu: ZetaMonomial, mult: u32) -> Result<()> {
    if mult == 0 {
        return Ok(());
    }
    if nu.is_identity() {
        return Err(Error::IdentityFactor);
    }
    *den.entry(nu).or_insert(0) += mult;
    Ok(())
}

/// Per-factor maximum of two multisets.
pub fn factors_union_max(a: &FactorMultiset, b: &FactorMultiset) -> FactorMultiset {
    let mut out = a.clone();
    for (nu, &m) in b {
        let e = out.entry(nu.clone()).or_insert(0);
        *e = (*e).max(m);
    }
    out
}

/// Multiset difference `a - b` (saturating per factor).
pub fn factors_sub(a: &FactorMultiset, b: &FactorMultiset) -> FactorMultiset {
    let mut out = FactorMultiset::new();
    for (nu, &m) in a {
        let cut = b.get(nu).copied().unwrap_or(0);
        if m > cut {
            out.insert(nu.clone(), m - cut);
        }
    }
    out
}

/// Shared factors of two multisets (per-factor minimum).
pub fn factors_common(a: &FactorMultiset, b: &FactorMultiset) -> FactorMultiset {
    let mut out = FactorMultiset::new();
    for (nu, &m) in a {
        if let Some(&mb) = b.get(nu) {
            out.insert(nu.clone(), m.min(mb));
        }
    }
    out
}

/// Expand `prod (1 - nu)^mult` as a Laurent polynomial.
pub fn factors_expand(nvars: usize, den: &FactorMultiset) -> LaurentPolynomial {
    let mut acc = LaurentPolynomial::one(nvars);
    for (nu, &mult) in den {
        let binom = LaurentPolynomial::one_minus(nu);
        for _ in 0..mult {
            acc = acc.mul(&binom);
        }
    }
    acc
}

/// A rational function on the torus: `num / (den_unit * prod (1 - nu)^k)`.
///
/// The representation is not canonical; equality is decided by
/// cross-multiplication. The zero value is stored with an empty
/// denominator.
#[derive(Clone)]
pub struct TorusScalar {
    num: LaurentPolynomial,
    den_unit: Monomial,
    den: FactorMultiset,
}

impl TorusScalar {
    pub fn zero(nvars: usize) -> Self {
        Self::from_laurent(LaurentPolynomial::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_laurent(LaurentPolynomial::one(nvars))
    }

    pub fn from_laurent(num: LaurentPolynomial) -> Self {
        let nvars = num.nvars();
        TorusScalar {
            num,
            den_unit: Monomial::identity(nvars),
            den: FactorMultiset::new(),
        }
    }

    pub fn from_rational(nvars: usize, r: Rational) -> Self {
        Self::from_laurent(LaurentPolynomial::from_rational(nvars, r))
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Self::from_laurent(LaurentPolynomial::from_monomial(m))
    }

    /// Build `num / (den_unit * prod (1 - nu))` from raw parts.
    pub fn from_parts(
        num: LaurentPolynomial,
        den_unit: Monomial,
        den: FactorMultiset,
    ) -> Result<Self> {
        for nu in den.keys() {
            if nu.is_identity() {
                return Err(Error::IdentityFactor);
            }
        }
        assert_eq!(num.nvars(), den_unit.nvars());
        Ok(TorusScalar { num, den_unit, den })
    }

    /// `1 / prod (1 - nu)` over the given factors.
    pub fn inverse_of_factors<'a>(
        nvars: usize,
        factors: impl IntoIterator<Item = &'a ZetaMonomial>,
    ) -> Result<Self> {
        let mut den = FactorMultiset::new();
        for nu in factors {
            factor_insert(&mut den, nu.clone(), 1)?;
        }
        Ok(TorusScalar {
            num: LaurentPolynomial::one(nvars),
            den_unit: Monomial::identity(nvars),
            den,
        })
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numerator(&self) -> &LaurentPolynomial {
        &self.num
    }

    pub fn den_unit(&self) -> &Monomial {
        &self.den_unit
    }

    pub fn den_factors(&self) -> &FactorMultiset {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn den_expanded(&self) -> LaurentPolynomial {
        factors_expand(self.nvars(), &self.den).mul_monomial(&self.den_unit)
    }

    /// Fold the unit part of the denominator into the numerator.
    fn fold_unit(&self) -> Self {
        if self.den_unit.is_identity() {
            return self.clone();
        }
        TorusScalar {
            num: self.num.mul_monomial(&self.den_unit.inv()),
            den_unit: Monomial::identity(self.nvars()),
            den: self.den.clone(),
        }
    }

    /// Normalize: fold the unit and cancel denominator factors against the
    /// numerator where binomial division is exact. Factors are tried in
    /// canonical order, so the result is deterministic.
    pub fn reduced(&self) -> Self {
        let mut v = self.fold_unit();
        if v.num.is_zero() {
            v.den.clear();
            return v;
        }
        let factors: Vec<(ZetaMonomial, u32)> =
            v.den.iter().map(|(nu, &m)| (nu.clone(), m)).collect();
        for (nu, mult) in factors {
            let mut remaining = mult;
            while remaining > 0 {
                match v.num.try_div_binomial(&nu).expect("no identity factors") {
                    Some(q) => {
                        v.num = q;
                        remaining -= 1;
                    }
                    None => break,
                }
            }
            if remaining == 0 {
                v.den.remove(&nu);
            } else {
                v.den.insert(nu, remaining);
            }
        }
        v
    }

    pub fn neg(&self) -> Self {
        TorusScalar {
            num: self.num.neg(),
            den_unit: self.den_unit.clone(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let a = self.fold_unit();
        let b = other.fold_unit();
        let den = factors_union_max(&a.den, &b.den);
        let comp_a = factors_expand(a.nvars(), &factors_sub(&den, &a.den));
        let comp_b = factors_expand(b.nvars(), &factors_sub(&den, &b.den));
        let num = a.num.mul(&comp_a).add(&b.num.mul(&comp_b));
        TorusScalar {
            num,
            den_unit: Monomial::identity(a.nvars()),
            den,
        }
        .reduced()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let a = self.fold_unit();
        let b = other.fold_unit();
        let mut den = a.den;
        for (nu, m) in b.den {
            *den.entry(nu).or_insert(0) += m;
        }
        TorusScalar {
            num: a.num.mul(&b.num),
            den_unit: Monomial::identity(self.nvars()),
            den,
        }
        .reduced()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.scale_cyclotomic(&Cyclotomic::from_rational(r.clone()))
    }

    pub fn scale_cyclotomic(&self, c: &Cyclotomic) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        TorusScalar {
            num: self.num.scale(c),
            den_unit: self.den_unit.clone(),
            den: self.den.clone(),
        }
    }

    /// Multiply by `1 / prod (1 - nu)` without expanding anything.
    pub fn div_factors<'a>(
        &self,
        factors: impl IntoIterator<Item = &'a ZetaMonomial>,
    ) -> Result<Self> {
        let mut out = self.clone();
        for nu in factors {
            factor_insert(&mut out.den, nu.clone(), 1)?;
        }
        Ok(out.reduced())
    }

    /// Structural inverse: the numerator must be a single term or a
    /// two-term binomial `c * m * (1 - zeta^t mu)`. Factored denominators
    /// move to the numerator (expanded); this is only used where
    /// denominators are small.
    pub fn recip(&self) -> Result<Self> {
        let v = self.fold_unit();
        if v.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let old_den_expanded = factors_expand(v.nvars(), &v.den);
        let terms: Vec<(Monomial, Cyclotomic)> = v
            .num
            .iter()
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        match terms.len() {
            1 => {
                let (m, c) = &terms[0];
                let inv_c = c.inverse().expect("nonzero");
                let num = old_den_expanded
                    .mul_monomial(&m.inv())
                    .scale(&inv_c);
                Ok(TorusScalar {
                    num,
                    den_unit: Monomial::identity(v.nvars()),
                    den: FactorMultiset::new(),
                })
            }
            2 => {
                // c1*m1 + c2*m2 = c1*m1*(1 - zeta^t * m2/m1) when
                // -c2/c1 is a root of unity zeta^t.
                let (m1, c1) = &terms[0];
                let (m2, c2) = &terms[1];
                let ratio = c2.mul(&c1.inverse().expect("nonzero")).neg();
                let turn = ratio.as_root_of_unity().ok_or_else(|| {
                    Error::NotInvertible(format!("numerator {}", v.num))
                })?;
                let nu = ZetaMonomial::new(turn, m2.div(m1));
                debug_assert!(!nu.is_identity());
                let inv_c1 = c1.inverse().expect("nonzero");
                let num = old_den_expanded
                    .mul_monomial(&m1.inv())
                    .scale(&inv_c1);
                let mut den = FactorMultiset::new();
                factor_insert(&mut den, nu, 1)?;
                Ok(TorusScalar {
                    num,
                    den_unit: Monomial::identity(v.nvars()),
                    den,
                }
                .reduced())
            }
            _ => Err(Error::NotInvertible(format!("numerator {}", v.num))),
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.recip()?))
    }

    /// Exact equality via cross-multiplication; common denominator
    /// factors are cancelled first to keep the expansion small.
    pub fn eq_scalar(&self, other: &Self) -> bool {
        let a = self.fold_unit();
        let b = other.fold_unit();
        if a.num.is_zero() {
            return b.num.is_zero();
        }
        if b.num.is_zero() {
            return false;
        }
        let common = factors_common(&a.den, &b.den);
        let da = factors_sub(&a.den, &common);
        let db = factors_sub(&b.den, &common);
        let lhs = a.num.mul(&factors_expand(a.nvars(), &db));
        let rhs = b.num.mul(&factors_expand(b.nvars(), &da));
        lhs == rhs
    }

    /// Substitute rational values for the characters. `None` when a root
    /// or cyclotomic value is not rational, or the denominator vanishes.
    pub fn eval_rational(&self, values: &[Rational]) -> Option<Rational> {
        let num = self.num.eval_rational(values)?;
        let mut den = LaurentPolynomial::from_monomial(self.den_unit.clone())
            .eval_rational(values)?;
        for (nu, &mult) in &self.den {
            let factor = LaurentPolynomial::one_minus(nu).eval_rational(values)?;
            for _ in 0..mult {
                den *= &factor;
            }
        }
        if den.is_zero() {
            return None;
        }
        Some(num / den)
    }
}

impl PartialEq for TorusScalar {
    fn eq(&self, other: &Self) -> bool {
        self.eq_scalar(other)
    }
}

impl fmt::Debug for TorusScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for TorusScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() && self.den_unit.is_identity() {
            return write!(f, "{}", self.num);
        }
        let num = format!("{}", self.num);
        if num.contains('+') || num.contains(' ') {
            write!(f, "({})", num)?;
        } else {
            write!(f, "{}", num)?;
        }
        write!(f, " / (")?;
        let mut first = true;
        if !self.den_unit.is_identity() {
            write!(f, "{}", self.den_unit)?;
            first = false;
        }
        for (nu, &mult) in &self.den {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if nu.turn() == crate::Exponent::new(1, 2) && !nu.monomial().is_identity() {
                write!(f, "(1 + {})", nu.monomial())?;
            } else if nu.turn() == crate::Exponent::new(1, 2) {
                write!(f, "(1 + 1)")?;
            } else {
                write!(f, "(1 - {})", nu)?;
            }
            if mult > 1 {
                write!(f, "^{}", mult)?;
            }
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{exp, rat, rat_i};

    fn lam() -> ZetaMonomial {
        ZetaMonomial::untwisted(Monomial::var(2, 0).div(&Monomial::var(2, 1)))
    }

    fn one_over(nu: &ZetaMonomial) -> TorusScalar {
        TorusScalar::inverse_of_factors(2, [nu.clone()].iter()).unwrap()
    }

    #[test]
    fn ratio_of_binomials_reduces() {
        // (1 - l^2)/(1 - l) equals 1 + l
        let l = lam();
        let mut num = LaurentPolynomial::one(2);
        num.add_term(l.monomial().pow(2), Cyclotomic::from_integer(-1));
        let frac = TorusScalar::from_parts(
            num,
            Monomial::identity(2),
            FactorMultiset::from([(l.clone(), 1)]),
        )
        .unwrap();
        let mut expanded = LaurentPolynomial::one(2);
        expanded.add_term(l.monomial().clone(), Cyclotomic::one());
        assert!(frac.eq_scalar(&TorusScalar::from_laurent(expanded)));
        // and the reduced representation has an empty denominator
        assert!(frac.reduced().den_factors().is_empty());
    }

    #[test]
    fn unit_denominator_representations_agree() {
        // l^-1 / (l^-1 - 1) written with a unit denominator equals
        // 1/(1 - l) up to sign: l^-1 - 1 = l^-1 * (1 - l) * (-1)... the
        // clean identity is l^-1/(l^-1*(1 - l)) = 1/(1 - l).
        let l = lam();
        let a = TorusScalar::from_parts(
            LaurentPolynomial::from_monomial(l.monomial().inv()),
            l.monomial().inv(),
            FactorMultiset::from([(l.clone(), 1)]),
        )
        .unwrap();
        let b = one_over(&l);
        assert!(a.eq_scalar(&b));
    }

    #[test]
    fn distinct_fractions_differ() {
        let l = lam();
        let plus = ZetaMonomial::new(exp(1, 2), l.monomial().clone());
        assert!(!one_over(&l).eq_scalar(&one_over(&plus)));
    }

    #[test]
    fn equality_invariant_under_common_unit() {
        let l = lam();
        let base = one_over(&l);
        let shifted = TorusScalar::from_parts(
            base.numerator().mul_monomial(l.monomial()),
            l.monomial().clone(),
            base.den_factors().clone(),
        )
        .unwrap();
        assert!(base.eq_scalar(&shifted));
    }

    #[test]
    fn arithmetic_round_trip() {
        let l = lam();
        let a = one_over(&l);
        let b = one_over(&l.inv());
        // 1/(1-l) + 1/(1-1/l) = 1 is a classical identity
        let sum = a.add(&b);
        assert!(sum.eq_scalar(&TorusScalar::one(2)));
        // a * (1 - l) = 1
        let product = a.mul(&TorusScalar::from_laurent(LaurentPolynomial::one_minus(&l)));
        assert!(product.eq_scalar(&TorusScalar::one(2)));
    }

    #[test]
    fn structural_inverse() {
        let l = lam();
        // invert (L0 - L1) -> two-term path
        let mut two_term = LaurentPolynomial::from_monomial(Monomial::var(2, 0));
        two_term.add_term(Monomial::var(2, 1), Cyclotomic::from_integer(-1));
        let v = TorusScalar::from_laurent(two_term.clone());
        let inv = v.recip().unwrap();
        assert!(v.mul(&inv).eq_scalar(&TorusScalar::one(2)));

        // single-term path with a factored denominator
        let w = one_over(&l).scale(&rat(3, 2));
        let winv = w.recip().unwrap();
        assert!(w.mul(&winv).eq_scalar(&TorusScalar::one(2)));

        // three-term numerators are rejected
        let mut three = LaurentPolynomial::one(2);
        three.add_term(Monomial::var(2, 0), Cyclotomic::one());
        three.add_term(Monomial::var(2, 1), Cyclotomic::one());
        assert!(matches!(
            TorusScalar::from_laurent(three).recip(),
            Err(Error::NotInvertible(_))
        ));
        assert!(matches!(
            TorusScalar::zero(2).recip(),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn equality_is_an_equivalence_on_representations() {
        // three representations of the same value, plus a different one
        let l = lam();
        let a = one_over(&l); // 1/(1 - l)
        let b = TorusScalar::from_parts(
            LaurentPolynomial::one_minus(&ZetaMonomial::new(exp(1, 2), l.monomial().clone())),
            Monomial::identity(2),
            FactorMultiset::from([(ZetaMonomial::untwisted(l.monomial().pow(2)), 1)]),
        )
        .unwrap(); // (1 + l)/(1 - l^2)
        let c = a.mul(&TorusScalar::one(2));
        let d = one_over(&l.inv());
        // reflexive, symmetric, transitive on the equal family
        for x in [&a, &b, &c] {
            assert!(x.eq_scalar(x));
        }
        assert!(a.eq_scalar(&b) && b.eq_scalar(&a));
        assert!(b.eq_scalar(&c) && a.eq_scalar(&c));
        assert!(!a.eq_scalar(&d) && !b.eq_scalar(&d));
    }

    #[test]
    fn rational_probe_evaluation() {
        let l = lam();
        let v = one_over(&l); // 1/(1 - L0/L1)
        let x = v.eval_rational(&[rat_i(2), rat_i(6)]).unwrap();
        assert_eq!(x, rat(3, 2));
        // pole: L0 == L1
        assert!(v.eval_rational(&[rat_i(3), rat_i(3)]).is_none());
    }
}
