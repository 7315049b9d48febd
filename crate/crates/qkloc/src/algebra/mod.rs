//! Exact arithmetic substrate: rationals, cyclotomic field elements,
//! Laurent monomials and polynomials with fractional exponents, and
//! torus scalars with lazily factored denominators.
//!
//! Ground coefficients are plain rationals. Larger ground rings
//! (e.g. with symmetric-function generators adjoined) are deliberately
//! not modeled; nothing in this crate consumes them.
//!
//! All values are immutable after construction and all operations are
//! pure, so everything here is freely shareable across threads; the one
//! piece of shared state, the cyclotomic-polynomial table, is an
//! internally synchronized memo.

pub mod context;
pub mod cyclotomic;
pub mod laurent;
pub mod monomial;
pub mod poly;
pub mod rational;
pub mod scalar;
