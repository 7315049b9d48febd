//! Exact symbolic toolkit for torus-equivariant quantum K-theory of
//! complex projective spaces.
//!
//! Everything is computed over an exact coefficient tower: arbitrary
//! precision rationals, cyclotomic field elements, Laurent monomials with
//! fractional exponents in the torus characters `L0..LN`, and fractions
//! thereof with lazily factored denominators. On top of that sit
//! structured rational functions of the quantization variable `q`
//! (residues, partial fractions, the Laurent/negative-part splitting),
//! the fixed-point basis of the equivariant K-ring, the q-hypergeometric
//! J-function of `CP^N`, and the residue recursion that ties its
//! fixed-point components together.
//!
//! No floating point is used anywhere; every comparison is exact, via
//! cross-multiplication of factored denominators.

pub mod algebra;
pub mod cli_io;
pub mod error;
pub mod jfunction;
pub mod kring;
pub mod localization;
pub mod qfunc;

pub use algebra::context::Context;
pub use algebra::cyclotomic::Cyclotomic;
pub use algebra::laurent::LaurentPolynomial;
pub use algebra::monomial::{Monomial, ZetaMonomial};
pub use algebra::scalar::TorusScalar;
pub use error::{Error, Result};
pub use jfunction::{JBundle, NovikovSeries};
pub use kring::{KClass, PPolynomial};
pub use qfunc::{PartialFractionForm, PoleLocus, QFactor, QFunction, QLaurent};

/// Arbitrary-precision rational number; the ground coefficient scalar.
pub type Rational = num_rational::BigRational;
/// Machine-word exact rational used for monomial exponents and
/// root-of-unity turns (denominators always divide the session root order).
pub type Exponent = num_rational::Rational64;
/// Arbitrary-precision integer.
pub type Integer = num_bigint::BigInt;

#[cfg(test)]
mod tests {
    // All values are immutable after construction and every operation is
    // pure, so the whole tower is freely shareable across threads.
    #[test]
    fn values_are_send_and_sync() {
        fn check<T: Send + Sync>() {}
        check::<crate::Cyclotomic>();
        check::<crate::Monomial>();
        check::<crate::ZetaMonomial>();
        check::<crate::LaurentPolynomial>();
        check::<crate::TorusScalar>();
        check::<crate::QFunction>();
        check::<crate::PartialFractionForm>();
        check::<crate::KClass>();
        check::<crate::PPolynomial>();
        check::<crate::JBundle>();
        check::<crate::Context>();
    }
}
