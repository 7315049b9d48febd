//! Fixed-point localization machinery: tangent-space eigenvalues of the
//! two-pointed degree-`m` leg moduli, the recursion coefficients
//! `C_ij(m)` by two independent derivations, the residue recursion
//! verifier, pole-part extraction, the degree-by-degree reconstruction
//! engine, Lefschetz traces, and the worked degree-2 decomposition.

mod degree2;
mod lefschetz;
mod recursion;

pub use degree2::{degree2_decomposition_terms, verify_degree2_example};
pub use lefschetz::{lefschetz_residue_form, lefschetz_trace};
pub use recursion::{
    audit_simple_poles, extract_pole_part, extract_pole_part_bundle, reconstruct,
    verify_recursion, DegreeCheck, RecursionReport, ReferenceOracle, VertexOracle,
    ZeroVertexOracle,
};

use crate::algebra::context::Context;
use crate::algebra::laurent::LaurentPolynomial;
use crate::algebra::monomial::{Monomial, ZetaMonomial};
use crate::algebra::scalar::TorusScalar;
use crate::error::{Error, Result};
use crate::Exponent;

/// A torus-fixed leg: the degree-`m` cover of the line joining two
/// distinct fixed points, with the marked point over `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LegSpec {
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub m: u32,
}

impl LegSpec {
    pub fn new(n: usize, i: usize, j: usize, m: u32) -> Result<Self> {
        if i > n || j > n {
            return Err(Error::IndexOutOfRange(format!(
                "fixed points ({}, {}) on CP^{}",
                i, j, n
            )));
        }
        if i == j {
            return Err(Error::IndexOutOfRange(
                "leg endpoints must be distinct".into(),
            ));
        }
        if m == 0 {
            return Err(Error::IndexOutOfRange(
                "leg multiplicity must be positive".into(),
            ));
        }
        Ok(LegSpec { n, i, j, m })
    }
}

/// Which derivation of the recursion coefficient to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CMethod {
    /// Closed product formula over the inner section eigenvalues.
    Product,
    /// Trace over the tangent space of the leg moduli point.
    Tangent,
}

/// Torus eigenvalues on the tangent space at the leg's moduli point:
/// sections `L_a * L_i^{-r/m} * L_j^{-s/m}` with `r + s = m`, minus the
/// two entries cancelling against domain automorphisms. The multiset has
/// `(N+1)(m+1) - 2` elements.
pub fn tangent_eigenvalues(ctx: &Context, leg: &LegSpec) -> Result<Vec<Monomial>> {
    check_leg(ctx, leg)?;
    let m = leg.m as i64;
    let mut out = Vec::new();
    for a in 0..=leg.n {
        for r in 0..=m {
            let s = m - r;
            if (a == leg.i && r == m) || (a == leg.j && r == 0) {
                continue;
            }
            let mut exps = vec![Exponent::from_integer(0); ctx.nvars()];
            exps[a] += Exponent::from_integer(1);
            exps[leg.i] -= Exponent::new(r, m);
            exps[leg.j] -= Exponent::new(s, m);
            out.push(Monomial::from_exponents(exps));
        }
    }
    debug_assert_eq!(out.len(), (leg.n + 1) * (leg.m as usize + 1) - 2);
    Ok(out)
}

fn check_leg(ctx: &Context, leg: &LegSpec) -> Result<()> {
    if leg.n != ctx.dim() {
        return Err(Error::ContextMismatch(format!(
            "leg on CP^{} in a CP^{} session",
            leg.n,
            ctx.dim()
        )));
    }
    if leg.i > leg.n || leg.j > leg.n || leg.i == leg.j {
        return Err(Error::IndexOutOfRange("invalid leg endpoints".into()));
    }
    ctx.check_root(leg.m)
}

/// The binomial factor list of `C_ij(m)`: the coefficient is
/// `prod (1 - nu)` over the returned bases.
///
/// The tangent method inverts each tangent eigenvalue; the product
/// method combines the two fixed-point classes with the inner double
/// product. Both return the same value (checked exactly in tests); the
/// factor lists are kept separate so each route is computed on its own.
pub fn c_factors(ctx: &Context, leg: &LegSpec, method: CMethod) -> Result<Vec<ZetaMonomial>> {
    check_leg(ctx, leg)?;
    match method {
        CMethod::Tangent => Ok(tangent_eigenvalues(ctx, leg)?
            .into_iter()
            .map(|mu| ZetaMonomial::untwisted(mu.inv()))
            .collect()),
        CMethod::Product => {
            let mut out = crate::kring::phi_factors(ctx, leg.i)?;
            out.extend(crate::kring::phi_factors(ctx, leg.j)?);
            let m = leg.m as i64;
            for r in 1..m {
                for a in 0..=leg.n {
                    // (L_j/L_a)^{r/m} (L_i/L_a)^{(m-r)/m}
                    let mut exps = vec![Exponent::from_integer(0); ctx.nvars()];
                    exps[leg.j] += Exponent::new(r, m);
                    exps[leg.i] += Exponent::new(m - r, m);
                    exps[a] -= Exponent::from_integer(1);
                    out.push(ZetaMonomial::untwisted(Monomial::from_exponents(exps)));
                }
            }
            Ok(out)
        }
    }
}

/// Rotate the fractional `lambda^{1/m}` content of a factor base to the
/// `k`-th branch: `lambda^{t/m}` picks up the phase `k t / m`.
pub(crate) fn branch_twist(nu: &ZetaMonomial, leg: &LegSpec, k: u32) -> ZetaMonomial {
    let e_i = nu.monomial().exponent(leg.i);
    let frac = e_i - e_i.floor();
    if frac == Exponent::from_integer(0) {
        return nu.clone();
    }
    let delta = frac * Exponent::from_integer(k as i64);
    nu.twisted_by(delta)
}

/// `C_ij(m)` factors at the `k`-th branch of `lambda^{1/m}`.
pub(crate) fn c_factors_at_branch(
    ctx: &Context,
    leg: &LegSpec,
    k: u32,
) -> Result<Vec<ZetaMonomial>> {
    Ok(c_factors(ctx, leg, CMethod::Tangent)?
        .iter()
        .map(|nu| branch_twist(nu, leg, k))
        .collect())
}

/// The recursion coefficient `C_ij(m)` as an expanded scalar.
pub fn c_coeff(ctx: &Context, leg: &LegSpec, method: CMethod) -> Result<TorusScalar> {
    let factors = c_factors(ctx, leg, method)?;
    Ok(TorusScalar::from_laurent(LaurentPolynomial::expand_binomials(
        ctx.nvars(),
        factors.iter(),
    )))
}
