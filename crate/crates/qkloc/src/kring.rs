//! The torus-equivariant K-ring of `CP^N`: the Hopf-generator
//! presentation and the fixed-point (delta-function) basis.
//!
//! Components in the fixed-point basis are primary storage; polynomials
//! in the Hopf generator `P` exist for input/output and for checking
//! against closed forms. Restriction to the `i`-th fixed point is
//! evaluation at `P = L_i`, and the inverse map is Lagrange
//! interpolation through the points `(L_i, component_i)`.
//!
//! Conventions: the class `phi^i` restricts at the `i`-th fixed point to
//! `prod_{j != i} (1 - L_i/L_j)`, and the delta class at `i` is `1`
//! there and `0` elsewhere.

use crate::algebra::context::Context;
use crate::algebra::laurent::LaurentPolynomial;
use crate::algebra::monomial::{Monomial, ZetaMonomial};
use crate::algebra::scalar::TorusScalar;
use crate::error::{Error, Result};

/// An equivariant K-class stored componentwise in the fixed-point basis.
#[derive(Clone, Debug, PartialEq)]
pub struct KClass {
    components: Vec<TorusScalar>,
}

impl KClass {
    pub fn new(components: Vec<TorusScalar>) -> Self {
        assert!(!components.is_empty());
        KClass { components }
    }

    pub fn components(&self) -> &[TorusScalar] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &TorusScalar {
        &self.components[i]
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    /// Componentwise product (the ring structure in this basis).
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len());
        KClass::new(
            self.components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.mul(b))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len());
        KClass::new(
            self.components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.add(b))
                .collect(),
        )
    }
}

/// A polynomial in the Hopf generator `P` with scalar coefficients.
///
/// Canonical representatives have degree at most `N`; the constructor
/// accepts higher degrees so that relation classes can be expressed and
/// then checked to vanish.
#[derive(Clone, Debug)]
pub struct PPolynomial {
    coeffs: Vec<TorusScalar>,
}

impl PPolynomial {
    pub fn new(coeffs: Vec<TorusScalar>) -> Self {
        assert!(!coeffs.is_empty());
        PPolynomial { coeffs }
    }

    pub fn constant(ctx: &Context, value: TorusScalar) -> Self {
        assert_eq!(value.nvars(), ctx.nvars());
        PPolynomial {
            coeffs: vec![value],
        }
    }

    pub fn one(ctx: &Context) -> Self {
        Self::constant(ctx, TorusScalar::one(ctx.nvars()))
    }

    /// The generator `P` itself.
    pub fn generator(ctx: &Context) -> Self {
        PPolynomial {
            coeffs: vec![TorusScalar::zero(ctx.nvars()), TorusScalar::one(ctx.nvars())],
        }
    }

    pub fn coeffs(&self) -> &[TorusScalar] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn mul(&self, other: &Self) -> Self {
        let nvars = self.coeffs[0].nvars();
        let mut out =
            vec![TorusScalar::zero(nvars); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        PPolynomial { coeffs: out }
    }

    /// Evaluate at `P = point` for a monomial point.
    pub fn eval_monomial(&self, point: &Monomial) -> TorusScalar {
        let mut acc = TorusScalar::zero(point.nvars());
        for (c, coeff) in self.coeffs.iter().enumerate() {
            let p_pow = TorusScalar::from_monomial(point.pow(c as i64));
            acc = acc.add(&coeff.mul(&p_pow));
        }
        acc
    }

    /// Structural equality coefficient by coefficient (after padding).
    pub fn eq_coeffwise(&self, other: &Self) -> bool {
        let n = self.coeffs.len().max(other.coeffs.len());
        let nvars = self.coeffs[0].nvars();
        let zero = TorusScalar::zero(nvars);
        (0..n).all(|i| {
            let a = self.coeffs.get(i).unwrap_or(&zero);
            let b = other.coeffs.get(i).unwrap_or(&zero);
            a.eq_scalar(b)
        })
    }
}

/// The binomial ratios `L_i/L_j`, `j != i`, entering `phi^i`.
pub fn phi_factors(ctx: &Context, i: usize) -> Result<Vec<ZetaMonomial>> {
    if i >= ctx.nvars() {
        return Err(Error::IndexOutOfRange(format!(
            "fixed point {} on CP^{}",
            i,
            ctx.dim()
        )));
    }
    (0..ctx.nvars())
        .filter(|&j| j != i)
        .map(|j| Ok(ZetaMonomial::untwisted(ctx.ratio(i, j)?)))
        .collect()
}

/// `phi^i` restricted to the `i`-th fixed point:
/// `prod_{j != i} (1 - L_i/L_j)`, expanded.
pub fn phi_value(ctx: &Context, i: usize) -> Result<TorusScalar> {
    let factors = phi_factors(ctx, i)?;
    Ok(TorusScalar::from_laurent(LaurentPolynomial::expand_binomials(
        ctx.nvars(),
        factors.iter(),
    )))
}

/// The delta class supported at the `i`-th fixed point.
pub fn delta_class(ctx: &Context, i: usize) -> Result<KClass> {
    if i >= ctx.nvars() {
        return Err(Error::IndexOutOfRange(format!(
            "fixed point {} on CP^{}",
            i,
            ctx.dim()
        )));
    }
    Ok(KClass::new(
        (0..ctx.nvars())
            .map(|j| {
                if i == j {
                    TorusScalar::one(ctx.nvars())
                } else {
                    TorusScalar::zero(ctx.nvars())
                }
            })
            .collect(),
    ))
}

/// Restriction map: component `i` is the polynomial evaluated at
/// `P = L_i`.
pub fn p_to_phi(ctx: &Context, p: &PPolynomial) -> Result<KClass> {
    let mut components = Vec::with_capacity(ctx.nvars());
    for i in 0..ctx.nvars() {
        components.push(p.eval_monomial(&ctx.var(i)?));
    }
    Ok(KClass::new(components))
}

/// The Lagrange basis through the interpolation points `P = L_i`:
/// `basis[i]` is the coefficient vector of the unique degree-`N`
/// polynomial equal to 1 at `L_i` and 0 at the other fixed points.
pub fn lagrange_basis(ctx: &Context) -> Result<Vec<Vec<TorusScalar>>> {
    let nvars = ctx.nvars();
    let mut basis = Vec::with_capacity(nvars);
    for i in 0..nvars {
        // numerator prod_{j != i} (P - L_j), coefficients by convolution
        let mut coeffs = vec![TorusScalar::one(nvars)];
        for j in 0..nvars {
            if j == i {
                continue;
            }
            let lj = TorusScalar::from_monomial(ctx.var(j)?);
            let mut next = vec![TorusScalar::zero(nvars); coeffs.len() + 1];
            for (k, c) in coeffs.iter().enumerate() {
                next[k + 1] = next[k + 1].add(c);
                next[k] = next[k].sub(&c.mul(&lj));
            }
            coeffs = next;
        }
        // denominator prod_{j != i} (L_i - L_j), inverted factor by factor
        let mut scale = TorusScalar::one(nvars);
        for j in 0..nvars {
            if j == i {
                continue;
            }
            let diff = TorusScalar::from_monomial(ctx.var(i)?)
                .sub(&TorusScalar::from_monomial(ctx.var(j)?));
            scale = scale.mul(&diff.recip()?);
        }
        basis.push(coeffs.into_iter().map(|c| c.mul(&scale)).collect());
    }
    Ok(basis)
}

/// Interpolation map: the unique degree-at-most-`N` polynomial in `P`
/// restricting to the given components. Inverse of [`p_to_phi`] on
/// canonical representatives.
pub fn phi_to_p(ctx: &Context, k: &KClass) -> Result<PPolynomial> {
    if k.len() != ctx.nvars() {
        return Err(Error::ContextMismatch(format!(
            "class has {} components, context has {}",
            k.len(),
            ctx.nvars()
        )));
    }
    let basis = lagrange_basis(ctx)?;
    let nvars = ctx.nvars();
    let mut coeffs = vec![TorusScalar::zero(nvars); nvars];
    for (i, ell) in basis.iter().enumerate() {
        for (c, b) in ell.iter().enumerate() {
            coeffs[c] = coeffs[c].add(&k.component(i).mul(b));
        }
    }
    Ok(PPolynomial::new(coeffs))
}

/// The defining relation `prod_i (1 - P L_i^{-1})` as a `P`-polynomial
/// of degree `N + 1` (it restricts to zero at every fixed point).
pub fn ring_relation(ctx: &Context) -> Result<PPolynomial> {
    let nvars = ctx.nvars();
    let mut acc = PPolynomial::one(ctx);
    for i in 0..nvars {
        let li_inv = TorusScalar::from_monomial(ctx.var(i)?.inv());
        let factor = PPolynomial::new(vec![TorusScalar::one(nvars), li_inv.neg()]);
        acc = acc.mul(&factor);
    }
    Ok(acc)
}
