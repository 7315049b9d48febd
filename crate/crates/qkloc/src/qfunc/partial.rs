//! Partial fraction decomposition over the session's roots of unity and
//! fractional-exponent monomials, and the induced splitting into a
//! Laurent polynomial part plus a part vanishing at `q = infinity`.

use std::collections::BTreeMap;

use crate::algebra::context::Context;
use crate::algebra::scalar::TorusScalar;
use crate::error::Result;

use super::{PoleLocus, QFactor, QFunction};

/// A Laurent polynomial in `q` with scalar coefficients.
#[derive(Clone, Debug)]
pub struct QLaurent {
    nvars: usize,
    terms: BTreeMap<i64, TorusScalar>,
}

impl QLaurent {
    pub fn zero(nvars: usize) -> Self {
        QLaurent {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn insert(&mut self, k: i64, coeff: TorusScalar) {
        if !coeff.is_zero() {
            self.terms.insert(k, coeff);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &TorusScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, k: i64) -> Option<&TorusScalar> {
        self.terms.get(&k)
    }

    pub fn to_qfunction(&self) -> QFunction {
        let mut acc = QFunction::zero(self.nvars);
        for (k, c) in &self.terms {
            acc = acc.add(&QFunction::from_scalar(c).mul(&QFunction::q_power(self.nvars, *k)));
        }
        acc
    }
}

/// One proper-fraction term `coeff / (1 - q nu)^order`.
#[derive(Clone, Debug)]
pub struct PfTerm {
    pub locus: PoleLocus,
    pub order: u32,
    pub coeff: TorusScalar,
}

impl PfTerm {
    pub fn to_qfunction(&self) -> QFunction {
        QFunction::from_scalar(&self.coeff)
            .with_q_factor(QFactor::new(1, self.locus.clone()), self.order)
    }
}

/// The decomposition `f = laurent + sum coeff / (1 - q nu)^order`.
#[derive(Clone, Debug)]
pub struct PartialFractionForm {
    pub laurent: QLaurent,
    pub terms: Vec<PfTerm>,
}

impl PartialFractionForm {
    /// Re-assemble the source function (exactly).
    pub fn recombine(&self) -> QFunction {
        let mut acc = self.laurent.to_qfunction();
        for t in &self.terms {
            acc = acc.add(&t.to_qfunction());
        }
        acc
    }

    /// Fraction terms whose locus is a root of unity in `q`.
    pub fn unity_terms(&self) -> impl Iterator<Item = &PfTerm> {
        self.terms.iter().filter(|t| t.locus.is_root_of_unity())
    }

    /// Fraction terms with poles away from the roots of unity.
    pub fn non_unity_terms(&self) -> impl Iterator<Item = &PfTerm> {
        self.terms.iter().filter(|t| !t.locus.is_root_of_unity())
    }
}

impl QFunction {
    /// Is the fraction proper: no negative `q` powers in the numerator
    /// and numerator degree strictly below the `q`-degree of the
    /// denominator? Proper fractions have no Laurent polynomial part.
    fn is_proper(&self) -> bool {
        let den_deg: i64 = self
            .den_q()
            .iter()
            .map(|(f, &m)| f.qpow() as i64 * m as i64)
            .sum();
        let min = self.num_poly().keys().next().copied().unwrap_or(0);
        let max = self.num_poly().keys().last().copied().unwrap_or(0);
        min >= 0 && max < den_deg
    }

    /// Decompose into a Laurent polynomial in `q` plus elementary
    /// fractions over the linear loci obtained by splitting every
    /// denominator factor inside the session's root lattice.
    ///
    /// Simple-pole coefficients come from evaluating `f (1 - q nu)` at
    /// `q = nu^{-1}`; higher orders by iterated evaluate-subtract-divide
    /// (a Taylor development in `1 - q nu`).
    pub fn partial_fractions(&self, ctx: &Context) -> Result<PartialFractionForm> {
        let f = self.reduced();
        if f.den_q().is_empty() {
            let mut laurent = QLaurent::zero(f.nvars());
            for (k, c) in f.num_terms() {
                let coeff = TorusScalar::from_parts(
                    c.clone(),
                    f.den_unit().clone(),
                    f.den_scalar().clone(),
                )?
                .reduced();
                laurent.insert(*k, coeff);
            }
            return Ok(PartialFractionForm {
                laurent,
                terms: Vec::new(),
            });
        }

        // Split every factor into linear branches and gather locus
        // multiplicities.
        let mut branch_table: Vec<(QFactor, u32, Vec<PoleLocus>)> = Vec::new();
        let mut loci: BTreeMap<PoleLocus, u32> = BTreeMap::new();
        for (factor, &mult) in f.den_q() {
            let branches = factor.branch_loci(ctx.order())?;
            for b in &branches {
                *loci.entry(b.clone()).or_insert(0) += mult;
            }
            branch_table.push((factor.clone(), mult, branches));
        }

        let mut terms: Vec<PfTerm> = Vec::new();
        for (nu, &k) in &loci {
            // h = f * (1 - q nu)^k, built structurally: each factor
            // containing this locus is replaced by its other branches.
            let mut h = f.clone();
            h.den_q.clear();
            for (factor, mult, branches) in &branch_table {
                if branches.contains(nu) {
                    for other in branches.iter().filter(|b| *b != nu) {
                        *h.den_q
                            .entry(QFactor::new(1, other.clone()))
                            .or_insert(0) += mult;
                    }
                } else {
                    *h.den_q.entry(factor.clone()).or_insert(0) += mult;
                }
            }
            let q0 = nu.inv();
            let mut remaining = h;
            for s in 0..k {
                let c = remaining.eval(&q0)?;
                if !c.is_zero() {
                    terms.push(PfTerm {
                        locus: nu.clone(),
                        order: k - s,
                        coeff: c.clone(),
                    });
                }
                if s + 1 < k {
                    remaining = remaining.sub(&QFunction::from_scalar(&c));
                    remaining = remaining
                        .div_num_linear(nu)
                        .expect("difference vanishes at the locus");
                }
            }
        }
        terms.sort_by(|a, b| a.locus.cmp(&b.locus).then(a.order.cmp(&b.order)));

        // Laurent part: zero for proper fractions, otherwise obtained by
        // subtracting all fraction terms (the denominator must then
        // cancel away entirely).
        let laurent = if f.is_proper() {
            QLaurent::zero(f.nvars())
        } else {
            let mut rest = f.clone();
            for t in &terms {
                rest = rest.sub(&t.to_qfunction());
            }
            let rest = rest.reduced();
            assert!(
                rest.den_q().is_empty(),
                "fraction terms must exhaust all q-poles"
            );
            let mut laurent = QLaurent::zero(f.nvars());
            for (k, c) in rest.num_terms() {
                let coeff = TorusScalar::from_parts(
                    c.clone(),
                    rest.den_unit().clone(),
                    rest.den_scalar().clone(),
                )?
                .reduced();
                laurent.insert(*k, coeff);
            }
            laurent
        };

        Ok(PartialFractionForm { laurent, terms })
    }

    /// Split into the Laurent polynomial part and the part regular at
    /// `q = 0` and vanishing at `q = infinity`. The two parts always
    /// resum to the input exactly, and the decomposition is unique.
    pub fn split_plus_minus(&self, ctx: &Context) -> Result<(QLaurent, QFunction)> {
        let pf = self.partial_fractions(ctx)?;
        let mut negative = QFunction::zero(self.nvars());
        for t in &pf.terms {
            negative = negative.add(&t.to_qfunction());
        }
        Ok((pf.laurent, negative))
    }
}
