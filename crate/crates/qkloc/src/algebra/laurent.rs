//! Laurent polynomials in the torus characters with cyclotomic
//! coefficients and rational exponents.
//!
//! Terms are kept in a `BTreeMap` keyed by monomial, so iteration order is
//! the canonical lexicographic term order and serialization is
//! deterministic. No zero coefficients are ever stored.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::algebra::cyclotomic::Cyclotomic;
use crate::algebra::monomial::{Monomial, ZetaMonomial};
use crate::error::{Error, Result};
use crate::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPolynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Cyclotomic>,
}

impl LaurentPolynomial {
    pub fn zero(nvars: usize) -> Self {
        LaurentPolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_term(Monomial::identity(nvars), Cyclotomic::one())
    }

    pub fn constant(nvars: usize, c: Cyclotomic) -> Self {
        Self::from_term(Monomial::identity(nvars), c)
    }

    pub fn from_rational(nvars: usize, r: Rational) -> Self {
        Self::constant(nvars, Cyclotomic::from_rational(r))
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Self::from_term(m, Cyclotomic::one())
    }

    pub fn from_term(m: Monomial, c: Cyclotomic) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPolynomial { nvars, terms }
    }

    /// `1 - nu` for a (possibly twisted) monomial `nu`.
    pub fn one_minus(nu: &ZetaMonomial) -> Self {
        let mut p = Self::one(nu.nvars());
        p.add_term(nu.monomial().clone(), nu.zeta_part().neg());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(m, c)| m.is_identity() && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Cyclotomic)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Cyclotomic {
        self.terms.get(m).cloned().unwrap_or_else(Cyclotomic::zero)
    }

    /// The single term, if there is exactly one.
    pub fn as_single_term(&self) -> Option<(&Monomial, &Cyclotomic)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// The constant coefficient when the value is a constant.
    pub fn as_constant(&self) -> Option<Cyclotomic> {
        if self.terms.is_empty() {
            return Some(Cyclotomic::zero());
        }
        let (m, c) = self.as_single_term()?;
        if m.is_identity() {
            Some(c.clone())
        } else {
            None
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Cyclotomic) {
        assert_eq!(m.nvars(), self.nvars, "monomial arity mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.nvars != other.nvars {
            return Err(Error::ContextMismatch(format!(
                "{} vs {} characters",
                self.nvars, other.nvars
            )));
        }
        Ok(self.add(other))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.nvars != other.nvars {
            return Err(Error::ContextMismatch(format!(
                "{} vs {} characters",
                self.nvars, other.nvars
            )));
        }
        Ok(self.mul(other))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        if self.terms.is_empty() || other.terms.is_empty() {
            return out;
        }
        // Iterate the smaller operand on the outside.
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        for (ms, cs) in &small.terms {
            for (ml, cl) in &large.terms {
                out.add_term(ms.mul(ml), cs.mul(cl));
            }
        }
        out
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut out = Self::zero(self.nvars);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v.mul(c));
        }
        out
    }

    /// Multiply by a single (possibly twisted) monomial.
    pub fn mul_zeta_monomial(&self, zm: &ZetaMonomial) -> Self {
        let zeta = zm.zeta_part();
        let mut out = Self::zero(self.nvars);
        for (m, v) in &self.terms {
            out.add_term(m.mul(zm.monomial()), v.mul(&zeta));
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        let mut out = Self::zero(self.nvars);
        for (mm, v) in &self.terms {
            out.add_term(mm.mul(m), v.clone());
        }
        out
    }

    /// Expand a product of binomial factors `prod (1 - nu)`.
    pub fn expand_binomials<'a>(
        nvars: usize,
        factors: impl IntoIterator<Item = &'a ZetaMonomial>,
    ) -> Self {
        let mut acc = Self::one(nvars);
        for nu in factors {
            acc = acc.mul(&Self::one_minus(nu));
        }
        acc
    }

    /// Exact division by the binomial `(1 - factor)`.
    ///
    /// Returns `Ok(Some(quotient))` when the division is exact,
    /// `Ok(None)` otherwise, and an error for the identity factor (whose
    /// binomial would be zero).
    ///
    /// The algorithm groups terms into cosets of the cyclic group
    /// generated by the factor monomial and runs a prefix-sum division in
    /// each coset; a coset divides exactly when its coefficients sum to
    /// zero. A pure root-of-unity factor is a nonzero constant and always
    /// divides.
    pub fn try_div_binomial(&self, factor: &ZetaMonomial) -> Result<Option<Self>> {
        if factor.is_identity() {
            return Err(Error::IdentityFactor);
        }
        if self.is_zero() {
            return Ok(Some(self.clone()));
        }
        if factor.monomial().is_identity() {
            // (1 - zeta^t) is a nonzero cyclotomic constant.
            let unit = Cyclotomic::one().sub(&factor.zeta_part());
            let inv = unit.inverse().expect("nonzero constant");
            return Ok(Some(self.scale(&inv)));
        }

        // Pivot: first variable where the factor has a nonzero exponent.
        let mu = factor.monomial();
        let pivot = (0..self.nvars)
            .find(|&i| !mu.exponent(i).is_zero())
            .expect("non-identity monomial");
        let step = mu.exponent(pivot);

        // Group terms by coset representative: m * mu^{-k} with
        // k = floor(m_pivot / step).
        let mut cosets: BTreeMap<Monomial, BTreeMap<i64, Cyclotomic>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let k_exp = m.exponent(pivot) / step;
            let k = k_exp.floor().to_integer();
            let rep = m.mul(&mu.pow(-k));
            // Coefficient in the univariate picture absorbs the twist:
            // term = c * rep * mu^k = (c * zeta^{-tk}) * rep * factor^k.
            let adjusted = c.mul(&Cyclotomic::root_of_unity(
                crate::algebra::monomial::normalize_turn(
                    -factor.turn() * crate::Exponent::from_integer(k),
                ),
            ));
            cosets
                .entry(rep)
                .or_default()
                .entry(k)
                .and_modify(|acc| *acc = acc.add(&adjusted))
                .or_insert(adjusted);
        }

        let mut quotient = Self::zero(self.nvars);
        for (rep, column) in cosets {
            // Divide sum_k phi_k x^k by (1 - x): running prefix sums,
            // exact iff the column sums to zero.
            let mut running = Cyclotomic::zero();
            let mut entries = column.into_iter().peekable();
            let mut out: Vec<(i64, Cyclotomic)> = Vec::new();
            while let Some((k, c)) = entries.next() {
                running = running.add(&c);
                let upper = match entries.peek() {
                    Some(&(next_k, _)) => next_k,
                    None => {
                        if !running.is_zero() {
                            return Ok(None);
                        }
                        k // nothing beyond the last input power
                    }
                };
                if !running.is_zero() {
                    for j in k..upper {
                        out.push((j, running.clone()));
                    }
                }
            }
            for (k, d) in out {
                // Undo the twist absorption: quotient term at rep * mu^k
                // carries zeta^{+tk}.
                let coeff = d.mul(&Cyclotomic::root_of_unity(
                    crate::algebra::monomial::normalize_turn(
                        factor.turn() * crate::Exponent::from_integer(k),
                    ),
                ));
                quotient.add_term(rep.mul(&mu.pow(k)), coeff);
            }
        }
        Ok(Some(quotient))
    }

    /// Substitute rational values for the characters. Fails (returns
    /// `None`) when a fractional exponent has no exact rational root or a
    /// coefficient does not lie in the rationals.
    pub fn eval_rational(&self, values: &[Rational]) -> Option<Rational> {
        assert_eq!(values.len(), self.nvars);
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.as_rational()?.clone();
            for (i, e) in m.exponents().iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                let base = crate::algebra::rational::nth_root_exact(
                    &values[i],
                    *e.denom() as u32,
                )?;
                let p = i32::try_from(*e.numer()).expect("exponent fits i32");
                term *= base.pow(p);
            }
            acc += term;
        }
        Some(acc)
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            let coeff = format!("{}", c);
            let needs_parens = coeff.contains(' ') || coeff.contains('+');
            let part = if m.is_identity() {
                coeff
            } else if c.is_one() {
                format!("{}", m)
            } else if coeff == "-1" {
                format!("-{}", m)
            } else if needs_parens {
                format!("({})*{}", coeff, m)
            } else {
                format!("{}*{}", coeff, m)
            };
            parts.push(part);
        }
        write!(f, "{}", join_signed(&parts))
    }
}

/// Join term strings with sign-aware separators.
pub(crate) fn join_signed(parts: &[String]) -> String {
    let mut out = String::new();
    for (k, part) in parts.iter().enumerate() {
        if k == 0 {
            out.push_str(part);
        } else if let Some(rest) = part.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(part);
        }
    }
    out
}
