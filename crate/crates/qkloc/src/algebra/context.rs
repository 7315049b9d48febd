//! Session parameters fixed once per computation: the number of torus
//! characters and the root order `M` governing both the cyclotomic field
//! and the exponent lattice (all exponent denominators divide `M`).

use crate::algebra::monomial::Monomial;
use crate::algebra::rational::lcm_1_to;
use crate::error::{Error, Result};
use crate::Exponent;

/// Algebra context for one session.
///
/// `nvars` is the number of torus characters (`N + 1` for `CP^N`); `order`
/// is the root order `M`. Values do not store a context reference;
/// operations that need the lattice bounds take the context explicitly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Context {
    nvars: usize,
    order: u32,
}

impl Context {
    pub fn new(nvars: usize, order: u32) -> Self {
        assert!(nvars >= 1, "at least one torus character required");
        assert!(order >= 1, "root order must be positive");
        Context { nvars, order }
    }

    /// Context for `CP^n` computations truncated at Novikov degree
    /// `max_degree`: root order `lcm(1..=max_degree)`, which covers every
    /// leg multiplicity and every `q`-power factor that can occur.
    pub fn projective(n: usize, max_degree: u32) -> Self {
        Context::new(n + 1, lcm_1_to(max_degree).max(1))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Dimension of the projective space (`nvars - 1`).
    pub fn dim(&self) -> usize {
        self.nvars - 1
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn identity(&self) -> Monomial {
        Monomial::identity(self.nvars)
    }

    /// The character `L_i`.
    pub fn var(&self, i: usize) -> Result<Monomial> {
        if i >= self.nvars {
            return Err(Error::IndexOutOfRange(format!(
                "L{} with {} characters",
                i, self.nvars
            )));
        }
        Ok(Monomial::var(self.nvars, i))
    }

    /// The character ratio `L_i / L_j`.
    pub fn ratio(&self, i: usize, j: usize) -> Result<Monomial> {
        Ok(self.var(i)?.div(&self.var(j)?))
    }

    /// Check that a turn denominator divides the session order.
    pub fn check_turn(&self, turn: Exponent) -> Result<()> {
        let denom = *turn.denom() as u32;
        if !self.order.is_multiple_of(denom) {
            return Err(Error::RootOrderExceeded {
                required: denom,
                order: self.order,
            });
        }
        Ok(())
    }

    /// Check that a multiplicity divides the session order, as required
    /// before taking `m`-th roots.
    pub fn check_root(&self, m: u32) -> Result<()> {
        if m == 0 || !self.order.is_multiple_of(m) {
            return Err(Error::RootOrderExceeded {
                required: m,
                order: self.order,
            });
        }
        Ok(())
    }
}
