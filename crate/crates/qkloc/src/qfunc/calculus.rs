//! Evaluation at monomial points and residues at simple poles.

use crate::algebra::rational::rat;
use crate::algebra::scalar::{factor_insert, TorusScalar};
use crate::error::{Error, Result};

use super::{PoleLocus, QFactor, QFunction};

impl QFunction {
    /// Substitute `q = q0` for a (possibly twisted) monomial point.
    ///
    /// Numerator terms pick up `q0^k`; each denominator factor
    /// `(1 - q^a nu)` becomes the scalar binomial `(1 - q0^a nu)`.
    /// Fails with [`Error::PoleHit`] when a factor vanishes at `q0`.
    pub fn eval(&self, q0: &PoleLocus) -> Result<TorusScalar> {
        let mut num = crate::algebra::laurent::LaurentPolynomial::zero(self.nvars());
        for (k, c) in self.num_terms() {
            num = num.add(&c.mul_zeta_monomial(&q0.pow(*k)));
        }
        let mut den = self.den_scalar().clone();
        for (factor, &mult) in self.den_q() {
            let nu = q0.pow(factor.qpow() as i64).mul(factor.base());
            if nu.is_identity() {
                return Err(Error::PoleHit);
            }
            factor_insert(&mut den, nu, mult)?;
        }
        Ok(TorusScalar::from_parts(num, self.den_unit().clone(), den)?.reduced())
    }

    /// The residue of `f dq/q` at the simple pole `q = nu^{-1}`.
    ///
    /// With `(1 - q^a mu)` the unique denominator factor vanishing there
    /// and `g = (1 - q^a mu) * f`, the value is `-g(nu^{-1}) / a`.
    pub fn residue(&self, at: &PoleLocus) -> Result<TorusScalar> {
        let v = self.reduced();
        let vanishing: Vec<(QFactor, u32)> = v
            .den_q()
            .iter()
            .filter(|(f, _)| f.vanishes_at(at))
            .map(|(f, &m)| (f.clone(), m))
            .collect();
        let total: u32 = vanishing.iter().map(|(_, m)| *m).sum();
        if total == 0 {
            return Err(Error::NotAPole);
        }
        if total > 1 {
            return Err(Error::UnsupportedOrder);
        }
        let factor = &vanishing[0].0;
        let mut g = v.clone();
        g.den_q.remove(factor);
        let q0 = at.inv();
        let value = g.eval(&q0)?;
        Ok(value.scale(&rat(-1, factor.qpow() as i64)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::laurent::LaurentPolynomial;
    use crate::algebra::monomial::{Monomial, ZetaMonomial};
    use crate::algebra::rational::{rat, rat_i};
    use crate::algebra::scalar::FactorMultiset;

    fn lam() -> ZetaMonomial {
        ZetaMonomial::untwisted(Monomial::var(2, 0).div(&Monomial::var(2, 1)))
    }

    fn one_over(factor: QFactor) -> QFunction {
        QFunction::one_over_factors(2, [factor])
    }

    #[test]
    fn eval_dilaton_at_inverse_sqrt() {
        // (1 - q) at q = lambda^{-1/2} gives 1 - L0^{-1/2} L1^{1/2}
        let q0 = ZetaMonomial::untwisted(lam().monomial().try_root(2, 2).unwrap()).inv();
        let v = QFunction::dilaton(2).eval(&q0).unwrap();
        let expected = TorusScalar::from_laurent(LaurentPolynomial::one_minus(&q0));
        assert!(v.eq_scalar(&expected));
    }

    #[test]
    fn eval_simple_fraction() {
        // 1/(1-q) at q = lambda^{-1} gives 1/(1 - lambda^{-1})
        let q0 = lam().inv();
        let v = one_over(QFactor::unity(2, 1)).eval(&q0).unwrap();
        let expected = TorusScalar::from_parts(
            LaurentPolynomial::one(2),
            Monomial::identity(2),
            FactorMultiset::from([(lam().inv(), 1)]),
        )
        .unwrap();
        assert!(v.eq_scalar(&expected));
    }

    #[test]
    fn eval_hits_pole() {
        let f = one_over(QFactor::new(1, lam()));
        assert!(matches!(f.eval(&lam().inv()), Err(Error::PoleHit)));
    }

    #[test]
    fn residue_of_single_linear_factor() {
        // Res of 1/(1 - q l) dq/q at q = l^{-1} is -1
        let f = one_over(QFactor::new(1, lam()));
        let r = f.residue(&lam()).unwrap();
        assert!(r.eq_scalar(&TorusScalar::from_rational(2, rat_i(-1))));
    }

    #[test]
    fn residue_with_spectator_factor() {
        // Res of 1/((1-q)(1-q l)) dq/q at q = l^{-1} is -1/(1 - l^{-1})
        let f = QFunction::one_over_factors(
            2,
            [QFactor::unity(2, 1), QFactor::new(1, lam())],
        );
        let r = f.residue(&lam()).unwrap();
        let expected = TorusScalar::from_parts(
            LaurentPolynomial::one(2),
            Monomial::identity(2),
            FactorMultiset::from([(lam().inv(), 1)]),
        )
        .unwrap()
        .neg();
        assert!(r.eq_scalar(&expected));
    }

    #[test]
    fn residue_of_multiplicity_two_cover() {
        // Res of 1/(1 - q^2 l) dq/q at the principal root q = l^{-1/2}
        // is -1/2.
        let f = one_over(QFactor::new(2, lam()));
        let sqrt = ZetaMonomial::untwisted(lam().monomial().try_root(2, 2).unwrap());
        let r = f.residue(&sqrt).unwrap();
        assert!(r.eq_scalar(&TorusScalar::from_rational(2, rat(-1, 2))));
    }

    #[test]
    fn residue_error_cases() {
        let f = one_over(QFactor::new(1, lam()));
        // not a pole
        assert!(matches!(
            f.residue(&lam().inv()),
            Err(Error::NotAPole)
        ));
        // double pole is out of contract
        let sq = f.mul(&one_over(QFactor::new(1, lam())));
        assert!(matches!(
            sq.residue(&lam()),
            Err(Error::UnsupportedOrder)
        ));
    }
}
