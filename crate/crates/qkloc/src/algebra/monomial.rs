//! Laurent monomials in the torus characters `L0..LN` with exact rational
//! exponents, and monomials twisted by a root of unity.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::cyclotomic::Cyclotomic;
use crate::algebra::rational::fmt_exponent;
use crate::error::{Error, Result};
use crate::Exponent;

/// Reduce a turn to the canonical window `[0, 1)`.
pub fn normalize_turn(t: Exponent) -> Exponent {
    let f = t.floor();
    t - f
}

/// A Laurent monomial `prod L_i^{e_i}` with rational exponents.
///
/// The exponent denominators must divide the session root order; that is
/// enforced at the points where roots are taken, not stored here.
/// Ordering is lexicographic on the exponent vector, which is the
/// canonical term order everywhere in the crate.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exps: Vec<Exponent>,
}

impl Monomial {
    pub fn identity(nvars: usize) -> Self {
        Monomial {
            exps: vec![Exponent::zero(); nvars],
        }
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index out of range");
        let mut exps = vec![Exponent::zero(); nvars];
        exps[index] = Exponent::from_integer(1);
        Monomial { exps }
    }

    pub fn from_exponents(exps: Vec<Exponent>) -> Self {
        Monomial { exps }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[Exponent] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> Exponent {
        self.exps[i]
    }

    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(|e| e.is_zero())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars(), other.nvars(), "monomial arity mismatch");
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn inv(&self) -> Self {
        Monomial {
            exps: self.exps.iter().map(|e| -e).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        let k = Exponent::from_integer(k);
        Monomial {
            exps: self.exps.iter().map(|e| e * k).collect(),
        }
    }

    /// Principal `a`-th root: all exponents divided by `a`. Fails if a
    /// resulting denominator does not divide the session root order.
    pub fn try_root(&self, a: u32, order: u32) -> Result<Self> {
        assert!(a >= 1);
        let div = Exponent::new(1, a as i64);
        let exps: Vec<Exponent> = self.exps.iter().map(|e| e * div).collect();
        for e in &exps {
            let denom = *e.denom() as u32;
            if !order.is_multiple_of(denom) {
                return Err(Error::RootOrderExceeded {
                    required: denom,
                    order,
                });
            }
        }
        Ok(Monomial { exps })
    }

    /// Largest denominator among the exponents.
    pub fn max_exponent_denominator(&self) -> u32 {
        self.exps
            .iter()
            .map(|e| *e.denom() as u32)
            .max()
            .unwrap_or(1)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, e) in self.exps.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "L{}", i)?;
            if !e.is_one() {
                if e.denom() == &1 {
                    write!(f, "^{}", e.numer())?;
                } else {
                    write!(f, "^({})", fmt_exponent(e))?;
                }
            }
        }
        Ok(())
    }
}

/// A monomial twisted by a root of unity: `e^{2 pi i turn} * mono`.
///
/// These appear as bases of denominator binomial factors `(1 - nu)` and as
/// pole loci; the twist is required as soon as a binomial `(1 - q^a mu)`
/// is split into its `a` linear factors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZetaMonomial {
    turn: Exponent,
    mono: Monomial,
}

impl ZetaMonomial {
    pub fn new(turn: Exponent, mono: Monomial) -> Self {
        ZetaMonomial {
            turn: normalize_turn(turn),
            mono,
        }
    }

    pub fn untwisted(mono: Monomial) -> Self {
        ZetaMonomial {
            turn: Exponent::zero(),
            mono,
        }
    }

    pub fn identity(nvars: usize) -> Self {
        Self::untwisted(Monomial::identity(nvars))
    }

    /// A pure root of unity (identity monomial part).
    pub fn root_of_unity(nvars: usize, turn: Exponent) -> Self {
        Self::new(turn, Monomial::identity(nvars))
    }

    pub fn turn(&self) -> Exponent {
        self.turn
    }

    pub fn monomial(&self) -> &Monomial {
        &self.mono
    }

    pub fn nvars(&self) -> usize {
        self.mono.nvars()
    }

    pub fn is_identity(&self) -> bool {
        self.turn.is_zero() && self.mono.is_identity()
    }

    pub fn is_untwisted(&self) -> bool {
        self.turn.is_zero()
    }

    /// True when the monomial part is trivial, i.e. the value is a root of
    /// unity (pole loci of this kind sit at roots of unity in `q`).
    pub fn is_root_of_unity(&self) -> bool {
        self.mono.is_identity()
    }

    pub fn mul(&self, other: &Self) -> Self {
        ZetaMonomial {
            turn: normalize_turn(self.turn + other.turn),
            mono: self.mono.mul(&other.mono),
        }
    }

    pub fn inv(&self) -> Self {
        ZetaMonomial {
            turn: normalize_turn(-self.turn),
            mono: self.mono.inv(),
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        ZetaMonomial {
            turn: normalize_turn(self.turn * Exponent::from_integer(k)),
            mono: self.mono.pow(k),
        }
    }

    /// Principal `a`-th root; both the turn and every exponent must stay
    /// within the `order`-lattice.
    pub fn try_root(&self, a: u32, order: u32) -> Result<Self> {
        let turn = self.turn / Exponent::from_integer(a as i64);
        let denom = *turn.denom() as u32;
        if !order.is_multiple_of(denom) {
            return Err(Error::RootOrderExceeded {
                required: denom,
                order,
            });
        }
        Ok(ZetaMonomial {
            turn: normalize_turn(turn),
            mono: self.mono.try_root(a, order)?,
        })
    }

    /// Multiply the twist by `e^{2 pi i delta}`.
    pub fn twisted_by(&self, delta: Exponent) -> Self {
        ZetaMonomial {
            turn: normalize_turn(self.turn + delta),
            mono: self.mono.clone(),
        }
    }

    /// The twist as a cyclotomic scalar.
    pub fn zeta_part(&self) -> Cyclotomic {
        Cyclotomic::root_of_unity(self.turn)
    }
}

impl PartialOrd for ZetaMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ZetaMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.mono
            .cmp(&other.mono)
            .then_with(|| self.turn.cmp(&other.turn))
    }
}

impl fmt::Debug for ZetaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for ZetaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.turn.is_zero() {
            return write!(f, "{}", self.mono);
        }
        let z = if self.turn == Exponent::new(1, 2) {
            "-1".to_string()
        } else {
            format!("zeta({})", fmt_exponent(&self.turn))
        };
        if self.mono.is_identity() {
            write!(f, "{}", z)
        } else {
            write!(f, "{}*{}", z, self.mono)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{exp, exp_i};

    fn mono(exps: &[(i64, i64)]) -> Monomial {
        Monomial::from_exponents(exps.iter().map(|&(n, d)| exp(n, d)).collect())
    }

    #[test]
    fn lexicographic_order() {
        let a = mono(&[(1, 1), (-1, 1)]);
        let b = mono(&[(1, 1), (0, 1)]);
        assert!(a < b);
        assert!(mono(&[(0, 1), (5, 1)]) < a);
    }

    #[test]
    fn roots_respect_the_session_lattice() {
        let lambda = mono(&[(1, 1), (-1, 1)]);
        let half = lambda.try_root(2, 12).unwrap();
        assert_eq!(half.exponent(0), exp(1, 2));
        assert_eq!(half.exponent(1), exp(-1, 2));
        assert!(lambda.try_root(5, 12).is_err());
    }

    #[test]
    fn turn_normalization() {
        assert_eq!(normalize_turn(exp(3, 2)), exp(1, 2));
        assert_eq!(normalize_turn(exp(-1, 3)), exp(2, 3));
        assert_eq!(normalize_turn(exp_i(2)), exp_i(0));
    }

    #[test]
    fn twisted_roots() {
        let nu = ZetaMonomial::new(exp(1, 2), mono(&[(1, 1), (-1, 1)]));
        let r = nu.try_root(2, 4).unwrap();
        assert_eq!(r.turn(), exp(1, 4));
        assert_eq!(r.monomial().exponent(0), exp(1, 2));
        assert!(nu.try_root(2, 2).is_err());
    }

    #[test]
    fn identity_detection() {
        assert!(ZetaMonomial::identity(2).is_identity());
        assert!(!ZetaMonomial::root_of_unity(2, exp(1, 2)).is_identity());
        assert!(ZetaMonomial::root_of_unity(2, exp(1, 2)).is_root_of_unity());
    }
}
