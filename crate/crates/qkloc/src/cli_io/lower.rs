//! Typed lowering of parsed expressions into `QFunction` values (or
//! polynomials in the Hopf generator `P`).
//!
//! Division is lowered structurally: the divisor's syntax tree is
//! inverted factor by factor, so products of binomials in a denominator
//! never get expanded before inversion. A divisor that is not a product
//! of invertible atoms is rejected rather than mishandled.

use crate::algebra::context::Context;
use crate::algebra::scalar::TorusScalar;
use crate::error::{Error, Result};
use crate::qfunc::QFunction;

use super::ast::ExprAst;

/// A lowered value: a rational function of `q`, or a polynomial in `P`
/// with such coefficients (reduced modulo the ring relation).
#[derive(Clone, Debug)]
pub enum Lowered {
    Q(QFunction),
    P(Vec<QFunction>),
}

impl Lowered {
    pub fn into_qfunction(self) -> Result<QFunction> {
        match self {
            Lowered::Q(f) => Ok(f),
            Lowered::P(_) => Err(Error::NotInvertible(
                "expected a q-expression, found the generator P".into(),
            )),
        }
    }

    fn promote(self, nvars: usize) -> Vec<QFunction> {
        match self {
            Lowered::Q(f) => vec![f],
            Lowered::P(coeffs) => {
                let _ = nvars;
                coeffs
            }
        }
    }
}

fn p_add(ctx: &Context, a: Vec<QFunction>, b: Vec<QFunction>) -> Vec<QFunction> {
    let n = a.len().max(b.len());
    let mut out = vec![QFunction::zero(ctx.nvars()); n];
    for (k, f) in a.into_iter().enumerate() {
        out[k] = out[k].add(&f);
    }
    for (k, f) in b.into_iter().enumerate() {
        out[k] = out[k].add(&f);
    }
    out
}

fn p_mul(ctx: &Context, a: &[QFunction], b: &[QFunction]) -> Vec<QFunction> {
    let mut out = vec![QFunction::zero(ctx.nvars()); a.len() + b.len() - 1];
    for (i, fa) in a.iter().enumerate() {
        for (j, fb) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&fa.mul(fb));
        }
    }
    out
}

/// Reduce a `P`-polynomial modulo `prod_i (1 - P L_i^{-1})`.
fn p_reduce(ctx: &Context, mut coeffs: Vec<QFunction>) -> Result<Vec<QFunction>> {
    let relation = crate::kring::ring_relation(ctx)?;
    let rel = relation.coeffs();
    let deg = rel.len() - 1; // N + 1
    let lead_inv = rel[deg].recip()?;
    while coeffs.len() > deg {
        let top = coeffs.len() - 1;
        let factor = coeffs[top].mul_scalar(&lead_inv);
        if !factor.is_zero() {
            let shift = top - deg;
            for (k, r) in rel.iter().enumerate() {
                coeffs[shift + k] = coeffs[shift + k].sub(&factor.mul_scalar(r));
            }
        }
        coeffs.pop();
        while coeffs.len() > deg && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
    }
    Ok(coeffs)
}

fn pow_positive(ctx: &Context, v: Lowered, k: u32) -> Result<Lowered> {
    let mut acc = Lowered::Q(QFunction::one(ctx.nvars()));
    for _ in 0..k {
        acc = mul(ctx, acc, v.clone())?;
    }
    Ok(acc)
}

fn mul(ctx: &Context, a: Lowered, b: Lowered) -> Result<Lowered> {
    match (a, b) {
        (Lowered::Q(f), Lowered::Q(g)) => Ok(Lowered::Q(f.mul(&g))),
        (a, b) => {
            let pa = a.promote(ctx.nvars());
            let pb = b.promote(ctx.nvars());
            Ok(Lowered::P(p_reduce(ctx, p_mul(ctx, &pa, &pb))?))
        }
    }
}

fn add(ctx: &Context, a: Lowered, b: Lowered) -> Result<Lowered> {
    match (a, b) {
        (Lowered::Q(f), Lowered::Q(g)) => Ok(Lowered::Q(f.add(&g))),
        (a, b) => Ok(Lowered::P(p_add(
            ctx,
            a.promote(ctx.nvars()),
            b.promote(ctx.nvars()),
        ))),
    }
}

/// Invert an expression structurally: products invert factor by factor,
/// powers push through, and the leaves fall back to the structural
/// reciprocal of their lowered value.
fn recip(ctx: &Context, ast: &ExprAst) -> Result<QFunction> {
    match ast {
        ExprAst::Mul(a, b) => Ok(recip(ctx, a)?.mul(&recip(ctx, b)?)),
        ExprAst::Div(a, b) => Ok(recip(ctx, a)?.mul(&lower(ctx, b)?.into_qfunction()?)),
        ExprAst::Pow(a, k) => {
            if *k >= 0 {
                let r = recip(ctx, a)?;
                match pow_positive(ctx, Lowered::Q(r), *k as u32)? {
                    Lowered::Q(f) => Ok(f),
                    _ => unreachable!(),
                }
            } else {
                match lower_pow(ctx, a, -*k)? {
                    Lowered::Q(f) => Ok(f),
                    Lowered::P(_) => Err(Error::NotInvertible(
                        "cannot invert a polynomial in P".into(),
                    )),
                }
            }
        }
        ExprAst::Neg(a) => Ok(recip(ctx, a)?.neg()),
        other => lower(ctx, other)?.into_qfunction()?.try_recip(),
    }
}

fn lower_pow(ctx: &Context, base: &ExprAst, k: i64) -> Result<Lowered> {
    if k >= 0 {
        let v = lower(ctx, base)?;
        pow_positive(ctx, v, k as u32)
    } else {
        let r = recip(ctx, base)?;
        pow_positive(ctx, Lowered::Q(r), (-k) as u32)
    }
}

/// Lower a syntax tree into a typed value, rejecting out-of-range
/// character indices and non-invertible denominators.
pub fn lower(ctx: &Context, ast: &ExprAst) -> Result<Lowered> {
    match ast {
        ExprAst::Int(n) => Ok(Lowered::Q(QFunction::from_scalar(
            &TorusScalar::from_rational(ctx.nvars(), crate::algebra::rational::rat_i(*n)),
        ))),
        ExprAst::Q => Ok(Lowered::Q(QFunction::q_power(ctx.nvars(), 1))),
        ExprAst::P => Ok(Lowered::P(vec![
            QFunction::zero(ctx.nvars()),
            QFunction::one(ctx.nvars()),
        ])),
        ExprAst::Var(i) => {
            if *i >= ctx.nvars() {
                return Err(Error::UnknownVariable(format!("L{}", i)));
            }
            Ok(Lowered::Q(QFunction::from_scalar(
                &TorusScalar::from_monomial(ctx.var(*i)?),
            )))
        }
        ExprAst::Neg(a) => match lower(ctx, a)? {
            Lowered::Q(f) => Ok(Lowered::Q(f.neg())),
            Lowered::P(coeffs) => Ok(Lowered::P(coeffs.iter().map(|c| c.neg()).collect())),
        },
        ExprAst::Add(a, b) => add(ctx, lower(ctx, a)?, lower(ctx, b)?),
        ExprAst::Sub(a, b) => {
            let nb = match lower(ctx, b)? {
                Lowered::Q(f) => Lowered::Q(f.neg()),
                Lowered::P(coeffs) => Lowered::P(coeffs.iter().map(|c| c.neg()).collect()),
            };
            add(ctx, lower(ctx, a)?, nb)
        }
        ExprAst::Mul(a, b) => mul(ctx, lower(ctx, a)?, lower(ctx, b)?),
        ExprAst::Div(a, b) => {
            let num = lower(ctx, a)?;
            let den = recip(ctx, b)?;
            mul(ctx, num, Lowered::Q(den))
        }
        ExprAst::Pow(a, k) => lower_pow(ctx, a, *k),
    }
}

/// Parse and lower in one step.
pub fn parse_and_lower(ctx: &Context, text: &str) -> Result<Lowered> {
    let ast = super::parser::parse_expr(text)?;
    lower(ctx, &ast)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::monomial::Monomial;
    use crate::algebra::rational::exp;
    use crate::qfunc::QFactor;

    #[test]
    fn lowers_monomials() {
        let ctx = Context::new(2, 2);
        let v = parse_and_lower(&ctx, "L0^2 * L1^-1")
            .unwrap()
            .into_qfunction()
            .unwrap();
        let expected = Monomial::from_exponents(vec![exp(2, 1), exp(-1, 1)]);
        assert_eq!(v.as_monomial(), Some(expected));
    }

    #[test]
    fn lowers_structured_fractions() {
        let ctx = Context::new(2, 2);
        let v = parse_and_lower(&ctx, "1/(1 - q*L0/L1)")
            .unwrap()
            .into_qfunction()
            .unwrap();
        let lam = ctx.ratio(0, 1).unwrap();
        let expected = QFunction::one_over_factors(2, [QFactor::with_monomial(1, lam)]);
        assert!(v.eq_q(&expected));
        // the denominator factor is kept structurally
        assert_eq!(v.den_q().len(), 1);
    }

    #[test]
    fn lowers_products_of_denominator_factors() {
        let ctx = Context::new(2, 2);
        let v = parse_and_lower(&ctx, "(1 + q) / ((1 - q) * (1 - q^2) * 2)")
            .unwrap()
            .into_qfunction()
            .unwrap();
        assert!(!v.is_zero());
        // (1+q)/((1-q)(1-q^2)*2) = (1+q)/(2 (1-q)(1-q^2))
        let expected = QFunction::one(2)
            .add(&QFunction::q_power(2, 1))
            .mul(&QFunction::one_over_factors(
                2,
                [QFactor::unity(2, 1), QFactor::unity(2, 2)],
            ))
            .scale(&crate::algebra::rational::rat(1, 2));
        assert!(v.eq_q(&expected));
    }

    #[test]
    fn rejects_unknown_variables_and_bad_denominators() {
        let ctx = Context::new(2, 2);
        assert!(matches!(
            parse_and_lower(&ctx, "L7"),
            Err(Error::UnknownVariable(_))
        ));
        assert!(matches!(
            parse_and_lower(&ctx, "1/(1 + q + q^2)"),
            Err(Error::NotInvertible(_))
        ));
    }

    #[test]
    fn negative_powers_invert_structurally() {
        let ctx = Context::new(2, 2);
        let v = parse_and_lower(&ctx, "(1 - q)^-2")
            .unwrap()
            .into_qfunction()
            .unwrap();
        let expected =
            QFunction::one_over_factors(2, [QFactor::unity(2, 1), QFactor::unity(2, 1)]);
        assert!(v.eq_q(&expected));
    }

    #[test]
    fn p_expressions_reduce_modulo_the_relation() {
        // on the line, (1 - P/L0)(1 - P/L1) = 0
        let ctx = Context::new(2, 1);
        let v = parse_and_lower(&ctx, "(1 - P*L0^-1) * (1 - P*L1^-1)").unwrap();
        match v {
            Lowered::P(coeffs) => assert!(coeffs.iter().all(|c| c.is_zero())),
            Lowered::Q(_) => panic!("expected a P-polynomial"),
        }
    }
}
