//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two values built against incompatible session parameters were mixed.
    #[error("configuration mismatch: {0}")]
    ContextMismatch(String),
    /// A binomial factor (1 - m) with m the identity monomial is zero.
    #[error("binomial factor with identity monomial is zero")]
    IdentityFactor,
    #[error("division by zero")]
    DivisionByZero,
    /// Structural inversion failed: the divisor is not a unit times
    /// binomial factors in the supported shapes.
    #[error("cannot invert denominator: {0}")]
    NotInvertible(String),
    /// An evaluation point makes a denominator factor vanish.
    #[error("evaluation point hits a pole")]
    PoleHit,
    #[error("no denominator factor vanishes at the requested locus")]
    NotAPole,
    /// The pole has multiplicity greater than one; residues are only
    /// defined here for simple poles.
    #[error("pole order exceeds one at the requested locus")]
    UnsupportedOrder,
    /// A root extraction needs finer exponents or roots of unity than the
    /// session root order supports.
    #[error("root order {required} not supported by session order {order}")]
    RootOrderExceeded { required: u32, order: u32 },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    /// Reported by vertex oracles that cannot supply a requested degree.
    #[error("vertex oracle failure: {0}")]
    Oracle(String),
    /// Expression parsing failed at the given byte offset.
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("exponent must be an integer literal")]
    PowerNotInteger,
}

pub type Result<T> = std::result::Result<T, Error>;
