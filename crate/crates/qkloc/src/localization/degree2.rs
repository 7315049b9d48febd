//! The worked degree-2 decomposition on the projective line.
//!
//! With `l = L0/L1`, the degree-2 coefficient of the J-function at the
//! first fixed point decomposes into five elementary fractions:
//!
//! ```text
//! 1/((1-q^2)(1-lq)(1-lq^2)) =
//!       1/(2 (1-l)^2 (1-q))
//!     + 1/(2 (1-l^2) (1+q))
//!     + l^3/((1-l)(1-l^2)(1-lq))
//!     - l/(2 (1-l)(1-sqrt(l)) (1-sqrt(l) q))
//!     - l/(2 (1-l)(1+sqrt(l)) (1+sqrt(l) q))
//! ```
//!
//! The check is run twice: exactly, in the coefficient system with a
//! half turn and `l^{1/2}`, and again under the rational substitution
//! `l -> 4` (so `sqrt(l) -> 2`), where both sides become univariate
//! rational functions of `q` compared by an independent code path.

use crate::algebra::context::Context;
use crate::algebra::monomial::ZetaMonomial;
use crate::algebra::rational::{exp, rat, rat_i};
use crate::algebra::scalar::TorusScalar;
use crate::error::Result;
use crate::jfunction::j_coeff;
use crate::qfunc::{QFactor, QFunction};

/// The five elementary fractions of the decomposition, in display order.
pub fn degree2_decomposition_terms(ctx: &Context) -> Result<Vec<QFunction>> {
    ctx.check_root(2)?;
    let nvars = ctx.nvars();
    let lam = ctx.ratio(0, 1)?;
    let l = ZetaMonomial::untwisted(lam.clone());
    let l2 = ZetaMonomial::untwisted(lam.pow(2));
    let sqrt = ZetaMonomial::untwisted(lam.try_root(2, ctx.order())?);
    let minus_sqrt = sqrt.twisted_by(exp(1, 2));
    let half_turn = ZetaMonomial::root_of_unity(nvars, exp(1, 2));

    // 1/(2 (1-l)^2 (1-q))
    let t1 = QFunction::from_scalar(
        &TorusScalar::from_rational(nvars, rat(1, 2)).div_factors([l.clone(), l.clone()].iter())?,
    )
    .with_q_factor(QFactor::unity(nvars, 1), 1);

    // 1/(2 (1-l^2) (1+q))
    let t2 = QFunction::from_scalar(
        &TorusScalar::from_rational(nvars, rat(1, 2)).div_factors([l2.clone()].iter())?,
    )
    .with_q_factor(QFactor::new(1, half_turn), 1);

    // l^3/((1-l)(1-l^2)(1-lq))
    let t3 = QFunction::from_scalar(
        &TorusScalar::from_monomial(lam.pow(3)).div_factors([l.clone(), l2].iter())?,
    )
    .with_q_factor(QFactor::new(1, l.clone()), 1);

    // -l/(2 (1-l)(1-sqrt(l)) (1-sqrt(l) q))
    let t4 = QFunction::from_scalar(
        &TorusScalar::from_monomial(lam.clone())
            .scale(&rat(-1, 2))
            .div_factors([l.clone(), sqrt.clone()].iter())?,
    )
    .with_q_factor(QFactor::new(1, sqrt), 1);

    // -l/(2 (1-l)(1+sqrt(l)) (1+sqrt(l) q))
    let t5 = QFunction::from_scalar(
        &TorusScalar::from_monomial(lam)
            .scale(&rat(-1, 2))
            .div_factors([l, minus_sqrt.clone()].iter())?,
    )
    .with_q_factor(QFactor::new(1, minus_sqrt), 1);

    Ok(vec![t1, t2, t3, t4, t5])
}

/// Verify the five-term identity exactly, then re-verify it under the
/// rational substitution `(L0, L1) = (4, 1)` through the univariate
/// cross-multiplication path. Returns `true` only if both passes agree.
pub fn verify_degree2_example() -> Result<bool> {
    let ctx = Context::projective(1, 2);
    let lhs = j_coeff(&ctx, 0, 2)?;
    let mut rhs = QFunction::zero(ctx.nvars());
    for t in degree2_decomposition_terms(&ctx)? {
        rhs = rhs.add(&t);
    }
    let exact = lhs.eq_q(&rhs);

    // independent sanity pass: l -> 4, sqrt(l) -> 2
    let values = [rat_i(4), rat_i(1)];
    let lhs_rat = lhs
        .specialize_rational(&values)
        .expect("the substitution point avoids all poles");
    let mut rational = true;
    for t in degree2_decomposition_terms(&ctx)? {
        // each term specializes cleanly too
        if t.specialize_rational(&values).is_none() {
            rational = false;
        }
    }
    let rhs_rat = rhs
        .specialize_rational(&values)
        .expect("the substitution point avoids all poles");
    rational = rational && lhs_rat.eq_rational(&rhs_rat);

    Ok(exact && rational)
}
