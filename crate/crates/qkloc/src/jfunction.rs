//! The q-hypergeometric small J-function of `CP^N` at zero input, per
//! Novikov degree and per fixed point.
//!
//! The restriction to the `i`-th fixed point has degree-`d` coefficient
//!
//! ```text
//! 1 / ( prod_{r=2..d} (1 - q^r) * prod_{j != i} prod_{r=1..d} (1 - q^r L_i/L_j) )
//! ```
//!
//! for `d >= 1` (the overall `1 - q` numerator is cancelled against the
//! `r = 1` unity factor, pinning the representation), and `1 - q` at
//! degree zero. The Novikov variable is a truncation grading, not a
//! symbolic variable: a series is simply a vector of coefficients.

use crate::algebra::context::Context;
use crate::error::{Error, Result};
use crate::kring::lagrange_basis;
use crate::qfunc::{QFactor, QFunction};

/// A truncated power series in the Novikov variable with `QFunction`
/// coefficients, indexed by degree `0..=truncation`.
#[derive(Clone, Debug)]
pub struct NovikovSeries {
    coeffs: Vec<QFunction>,
}

impl NovikovSeries {
    pub fn new(coeffs: Vec<QFunction>) -> Self {
        assert!(!coeffs.is_empty());
        NovikovSeries { coeffs }
    }

    pub fn truncation(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeff(&self, d: u32) -> &QFunction {
        &self.coeffs[d as usize]
    }

    pub fn coeffs(&self) -> &[QFunction] {
        &self.coeffs
    }
}

/// Per-fixed-point J-function data truncated at a Novikov degree.
#[derive(Clone, Debug)]
pub struct JBundle {
    n: usize,
    components: Vec<NovikovSeries>,
}

impl JBundle {
    pub fn new(n: usize, components: Vec<NovikovSeries>) -> Self {
        assert_eq!(components.len(), n + 1);
        JBundle { n, components }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn truncation(&self) -> u32 {
        self.components[0].truncation()
    }

    pub fn component(&self, i: usize) -> &NovikovSeries {
        &self.components[i]
    }

    pub fn coeff(&self, i: usize, d: u32) -> &QFunction {
        self.components[i].coeff(d)
    }
}

/// The degree-`d` coefficient of the J-function restricted to fixed
/// point `i`.
pub fn j_coeff(ctx: &Context, i: usize, d: u32) -> Result<QFunction> {
    if i >= ctx.nvars() {
        return Err(Error::IndexOutOfRange(format!(
            "fixed point {} on CP^{}",
            i,
            ctx.dim()
        )));
    }
    if d == 0 {
        return Ok(QFunction::dilaton(ctx.nvars()));
    }
    let mut factors = Vec::new();
    for r in 2..=d {
        factors.push(QFactor::unity(ctx.nvars(), r));
    }
    for j in 0..ctx.nvars() {
        if j == i {
            continue;
        }
        let ratio = ctx.ratio(i, j)?;
        for r in 1..=d {
            factors.push(QFactor::with_monomial(r, ratio.clone()));
        }
    }
    Ok(QFunction::one_over_factors(ctx.nvars(), factors))
}

/// Structural audit of the allowed pole set: every denominator factor of
/// a J-coefficient must be `(1 - q^r)` or `(1 - q^r L_i/L_j)`.
pub fn audit_pole_locus(ctx: &Context, i: usize, f: &QFunction) -> Result<()> {
    for factor in f.den_q().keys() {
        let base = factor.base();
        if base.is_identity() {
            continue;
        }
        if !base.is_untwisted() {
            return Err(Error::ContextMismatch(format!(
                "unexpected twisted pole base {}",
                base
            )));
        }
        let mono = base.monomial();
        let mut ok = false;
        for j in 0..ctx.nvars() {
            if j != i && *mono == ctx.ratio(i, j)? {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(Error::ContextMismatch(format!(
                "pole base {} is not a character ratio at fixed point {}",
                mono, i
            )));
        }
    }
    Ok(())
}

/// The full bundle of fixed-point restrictions through degree `d_max`.
///
/// Requires the session root order to cover every multiplicity up to
/// `d_max`; the pole audit runs on every coefficient.
pub fn j_series(ctx: &Context, d_max: u32) -> Result<JBundle> {
    for m in 1..=d_max {
        ctx.check_root(m)?;
    }
    let n = ctx.dim();
    let mut components = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut coeffs = Vec::with_capacity(d_max as usize + 1);
        for d in 0..=d_max {
            let f = j_coeff(ctx, i, d)?;
            audit_pole_locus(ctx, i, &f)?;
            coeffs.push(f);
        }
        components.push(NovikovSeries::new(coeffs));
    }
    Ok(JBundle::new(n, components))
}

/// The degree-`d` coefficient in the Hopf-generator form: a polynomial
/// of degree at most `N` in `P` with `QFunction` coefficients, obtained
/// by Lagrange interpolation through the fixed-point restrictions.
/// Restricting it back (`P = L_i`) recovers [`j_coeff`] exactly.
#[derive(Clone, Debug)]
pub struct PFormCoefficient {
    coeffs: Vec<QFunction>,
}

impl PFormCoefficient {
    pub fn coeffs(&self) -> &[QFunction] {
        &self.coeffs
    }

    /// Evaluate at `P = L_i`.
    pub fn restrict(&self, ctx: &Context, i: usize) -> Result<QFunction> {
        let li = ctx.var(i)?;
        let mut acc = QFunction::zero(ctx.nvars());
        for (c, coeff) in self.coeffs.iter().enumerate() {
            let p_pow = crate::algebra::scalar::TorusScalar::from_monomial(li.pow(c as i64));
            acc = acc.add(&coeff.mul_scalar(&p_pow));
        }
        Ok(acc)
    }
}

pub fn j_in_p_basis(ctx: &Context, d: u32) -> Result<PFormCoefficient> {
    let basis = lagrange_basis(ctx)?;
    let nvars = ctx.nvars();
    let mut coeffs = vec![QFunction::zero(nvars); nvars];
    for (i, ell) in basis.iter().enumerate() {
        let ji = j_coeff(ctx, i, d)?;
        for (c, b) in ell.iter().enumerate() {
            coeffs[c] = coeffs[c].add(&ji.mul_scalar(b));
        }
    }
    Ok(PFormCoefficient { coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    
    use crate::algebra::rational::rat_i;
    use crate::Rational;

    #[test]
    fn degree_zero_is_the_dilaton_shift() {
        let ctx = Context::projective(1, 0);
        let f = j_coeff(&ctx, 0, 0).unwrap();
        assert!(f.eq_q(&QFunction::dilaton(2)));
    }

    #[test]
    fn degree_one_on_the_line() {
        // 1/(1 - q L0 L1^{-1}) after the dilaton cancellation
        let ctx = Context::projective(1, 1);
        let f = j_coeff(&ctx, 0, 1).unwrap();
        let lam = ctx.ratio(0, 1).unwrap();
        let expected = QFunction::one_over_factors(2, [QFactor::with_monomial(1, lam)]);
        assert!(f.eq_q(&expected));
        // representation pinned: single denominator factor, numerator 1
        assert_eq!(f.den_q().len(), 1);
    }

    #[test]
    fn degree_two_on_the_line() {
        // 1/((1 - q^2)(1 - l q)(1 - l q^2))
        let ctx = Context::projective(1, 2);
        let f = j_coeff(&ctx, 0, 2).unwrap();
        let lam = ctx.ratio(0, 1).unwrap();
        let expected = QFunction::one_over_factors(
            2,
            [
                QFactor::unity(2, 2),
                QFactor::with_monomial(1, lam.clone()),
                QFactor::with_monomial(2, lam),
            ],
        );
        assert!(f.eq_q(&expected));
    }

    #[test]
    fn degree_one_on_the_plane() {
        let ctx = Context::projective(2, 1);
        let f = j_coeff(&ctx, 0, 1).unwrap();
        let expected = QFunction::one_over_factors(
            3,
            [
                QFactor::with_monomial(1, ctx.ratio(0, 1).unwrap()),
                QFactor::with_monomial(1, ctx.ratio(0, 2).unwrap()),
            ],
        );
        assert!(f.eq_q(&expected));
    }

    #[test]
    fn series_components_and_truncation() {
        let ctx = Context::projective(1, 2);
        let bundle = j_series(&ctx, 2).unwrap();
        assert_eq!(bundle.truncation(), 2);
        for i in 0..=1 {
            assert!(bundle.coeff(i, 0).eq_q(&QFunction::dilaton(2)));
        }
        assert!(bundle
            .coeff(0, 2)
            .eq_q(&j_coeff(&ctx, 0, 2).unwrap()));
        // root order must cover the truncation
        let small = Context::new(2, 2);
        assert!(matches!(
            j_series(&small, 4),
            Err(Error::RootOrderExceeded { .. })
        ));
    }

    #[test]
    fn pole_audit_accepts_series_and_rejects_foreign_poles() {
        let ctx = Context::projective(2, 3);
        for i in 0..3 {
            for d in 0..=3 {
                audit_pole_locus(&ctx, i, &j_coeff(&ctx, i, d).unwrap()).unwrap();
            }
        }
        // a pole at L1/L2 is not allowed in component 0
        let foreign = QFunction::one_over_factors(
            3,
            [QFactor::with_monomial(1, ctx.ratio(1, 2).unwrap())],
        );
        assert!(audit_pole_locus(&ctx, 0, &foreign).is_err());
    }

    #[test]
    fn p_form_restricts_to_the_components() {
        for (n, d_max) in [(1usize, 3u32), (2, 3)] {
            let ctx = Context::projective(n, d_max);
            for d in 0..=d_max {
                let pform = j_in_p_basis(&ctx, d).unwrap();
                assert!(pform.coeffs().len() <= n + 1);
                for i in 0..=n {
                    let restricted = pform.restrict(&ctx, i).unwrap();
                    assert!(restricted.eq_q(&j_coeff(&ctx, i, d).unwrap()));
                }
            }
        }
    }

    #[test]
    fn index_symmetry_under_character_permutation() {
        // j_coeff is equivariant: permuting the fixed point index together
        // with the character values leaves the specialization unchanged.
        let ctx = Context::projective(1, 2);
        let probes: [(i64, i64); 2] = [(7, 3), (5, 11)];
        for d in 0..=2u32 {
            for (a, b) in probes {
                let f0 = j_coeff(&ctx, 0, d).unwrap();
                let f1 = j_coeff(&ctx, 1, d).unwrap();
                let v: Vec<Rational> = vec![rat_i(a), rat_i(b)];
                let w: Vec<Rational> = vec![rat_i(b), rat_i(a)];
                let s0 = f0.specialize_rational(&v).unwrap();
                let s1 = f1.specialize_rational(&w).unwrap();
                assert!(s0.eq_rational(&s1));
            }
        }
        // a full cycle on the plane: sigma = (0 1 2) sends the component
        // at 0 to the component at sigma(0) with permuted values
        let ctx2 = Context::projective(2, 2);
        let sigma = [1usize, 2, 0];
        let values = [rat_i(7), rat_i(3), rat_i(11)];
        for d in 0..=2u32 {
            for i in 0..3usize {
                let lhs = j_coeff(&ctx2, i, d).unwrap();
                let rhs = j_coeff(&ctx2, sigma[i], d).unwrap();
                // rhs reads character sigma(k) where lhs reads k
                let mut permuted = values.clone();
                for k in 0..3 {
                    permuted[sigma[k]] = values[k].clone();
                }
                let s_lhs = lhs.specialize_rational(&values).unwrap();
                let s_rhs = rhs.specialize_rational(&permuted).unwrap();
                assert!(s_lhs.eq_rational(&s_rhs), "i = {}, d = {}", i, d);
            }
        }
    }

    #[test]
    fn criterion_pole_simplicity_on_series() {
        // every non-unity pole locus of every component is simple
        let ctx = Context::projective(2, 3);
        let bundle = j_series(&ctx, 3).unwrap();
        for i in 0..3 {
            for d in 0..=3 {
                let f = bundle.coeff(i, d);
                for (factor, &mult) in f.den_q() {
                    if factor.base().is_identity() {
                        continue;
                    }
                    // multiplicity of the underlying linear locus
                    let branches = factor.branch_loci(ctx.order()).unwrap();
                    for b in branches {
                        let total: u32 = f
                            .den_q()
                            .iter()
                            .filter(|(g, _)| g.vanishes_at(&b))
                            .map(|(_, &m)| m)
                            .sum();
                        assert_eq!(total, 1, "pole at {} must be simple", b);
                        let _ = mult;
                    }
                }
            }
        }
    }
}
