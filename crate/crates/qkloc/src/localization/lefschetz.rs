//! Lefschetz fixed-point traces on `CP^N` for powers of the Hopf
//! generator, computed two ways: as the sum over fixed points, and from
//! the Laurent expansions of a global residue form at `P = 0` and
//! `P = infinity`.

use crate::algebra::context::Context;
use crate::algebra::monomial::Monomial;
use crate::algebra::scalar::TorusScalar;
use crate::error::Result;
use crate::kring::phi_factors;

/// The equivariant Euler characteristic of `P^k` on `CP^N` as the
/// fixed-point sum `sum_i L_i^k / prod_{j != i} (1 - L_i/L_j)`.
///
/// The poles of the individual terms cancel across the sum: the result
/// always reduces to a Laurent polynomial in the characters.
pub fn lefschetz_trace(ctx: &Context, k: i64) -> Result<TorusScalar> {
    let mut acc = TorusScalar::zero(ctx.nvars());
    for i in 0..ctx.nvars() {
        let num = TorusScalar::from_monomial(ctx.var(i)?.pow(k));
        let term = num.div_factors(phi_factors(ctx, i)?.iter())?;
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// Complete homogeneous symmetric functions `h_0..h_max` of the given
/// monomials, computed by convolving geometric series.
#[allow(clippy::needless_range_loop)] // the index difference is the power
fn complete_homogeneous(
    nvars: usize,
    values: &[Monomial],
    max: usize,
) -> Vec<TorusScalar> {
    let mut hs = vec![TorusScalar::zero(nvars); max + 1];
    hs[0] = TorusScalar::one(nvars);
    for v in values {
        let mut next = vec![TorusScalar::zero(nvars); max + 1];
        for s in 0..=max {
            // next[s] = sum_{t <= s} hs[t] * v^{s - t}
            for t in 0..=s {
                let pow = TorusScalar::from_monomial(v.pow((s - t) as i64));
                next[s] = next[s].add(&hs[t].mul(&pow));
            }
        }
        hs = next;
    }
    hs
}

/// The same Euler characteristic from the residues of
/// `P^k dP/P / prod_i (1 - P L_i^{-1})` at `P = 0` and `P = infinity`,
/// extracted from the Laurent expansions at the two points:
///
/// * at `P = 0` the residue is the complete homogeneous function
///   `h_{-k}` of the inverse characters (zero for `k > 0`);
/// * at `P = infinity` (coordinate `u = 1/P`, standard orientation) it
///   is `(-1)^N * (prod L_i) * h_{k-N-1}` of the characters (zero for
///   `k <= N`).
pub fn lefschetz_residue_form(ctx: &Context, k: i64) -> Result<TorusScalar> {
    let nvars = ctx.nvars();
    let n = ctx.dim();
    let mut total = TorusScalar::zero(nvars);

    if k <= 0 {
        let inverses: Vec<Monomial> = (0..nvars).map(|i| ctx.var(i).unwrap().inv()).collect();
        let hs = complete_homogeneous(nvars, &inverses, (-k) as usize);
        total = total.add(&hs[(-k) as usize]);
    }
    if k > (n as i64) {
        let vars: Vec<Monomial> = (0..nvars).map(|i| ctx.var(i).unwrap()).collect();
        let degree = (k - n as i64 - 1) as usize;
        let hs = complete_homogeneous(nvars, &vars, degree);
        let mut product = Monomial::identity(nvars);
        for v in &vars {
            product = product.mul(v);
        }
        let mut at_infinity = hs[degree].mul(&TorusScalar::from_monomial(product));
        if n % 2 == 1 {
            at_infinity = at_infinity.neg();
        }
        total = total.add(&at_infinity);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::laurent::LaurentPolynomial;
    use crate::algebra::rational::rat_i;

    #[test]
    fn spot_values_on_the_line() {
        let ctx = Context::projective(1, 1);
        let one = TorusScalar::one(2);
        assert!(lefschetz_trace(&ctx, 0).unwrap().eq_scalar(&one));
        assert!(lefschetz_trace(&ctx, 1).unwrap().is_zero());

        // k = -1 -> L0^{-1} + L1^{-1}
        let mut sum = LaurentPolynomial::from_monomial(ctx.var(0).unwrap().inv());
        sum.add_term(ctx.var(1).unwrap().inv(), crate::Cyclotomic::one());
        let expected = TorusScalar::from_laurent(sum);
        assert!(lefschetz_trace(&ctx, -1).unwrap().eq_scalar(&expected));

        // k = 2 -> -L0 L1
        let prod = ctx.var(0).unwrap().mul(&ctx.var(1).unwrap());
        let expected2 = TorusScalar::from_monomial(prod).scale(&rat_i(-1));
        assert!(lefschetz_trace(&ctx, 2).unwrap().eq_scalar(&expected2));
    }

    #[test]
    fn residue_form_matches_trace() {
        for n in 1..=2usize {
            let ctx = Context::projective(n, 1);
            for k in -4..=4i64 {
                let t = lefschetz_trace(&ctx, k).unwrap();
                let r = lefschetz_residue_form(&ctx, k).unwrap();
                assert!(t.eq_scalar(&r), "n = {}, k = {}", n, k);
            }
        }
    }

    #[test]
    fn trace_reduces_to_a_laurent_polynomial() {
        // the fixed-point denominators cancel in the sum
        for n in 1..=2usize {
            let ctx = Context::projective(n, 1);
            for k in [-3i64, 0, 1, 4] {
                let t = lefschetz_trace(&ctx, k).unwrap().reduced();
                assert!(
                    t.den_factors().is_empty(),
                    "n = {}, k = {} left factors {:?}",
                    n,
                    k,
                    t.den_factors()
                );
            }
        }
    }

    #[test]
    fn residue_form_middle_range_vanishes() {
        // for 1 <= k <= N both expansion points contribute nothing
        let ctx = Context::projective(2, 1);
        for k in 1..=2i64 {
            assert!(lefschetz_residue_form(&ctx, k).unwrap().is_zero());
        }
    }
}
