//! Deterministic JSON serialization.
//!
//! Schema: the top level is `{"session": {"n", "d", "m"}, "result": ...,
//! "checks": [...]}`. Arbitrary-precision numbers (rationals, exponents,
//! turns) serialize as strings like `"p/q"`; structural integers (powers,
//! orders, multiplicities, indices) as JSON numbers. Maps are emitted in
//! canonical term order throughout, so output is byte-stable.

use serde_json::{json, Map, Value};

use crate::algebra::cyclotomic::Cyclotomic;
use crate::algebra::laurent::LaurentPolynomial;
use crate::algebra::monomial::{Monomial, ZetaMonomial};
use crate::algebra::rational::{fmt_exponent, fmt_rational};
use crate::algebra::scalar::TorusScalar;
use crate::localization::RecursionReport;
use crate::qfunc::{PartialFractionForm, QFunction, QLaurent};

pub fn json_monomial(m: &Monomial) -> Value {
    Value::Array(
        m.exponents()
            .iter()
            .map(|e| Value::String(fmt_exponent(e)))
            .collect(),
    )
}

pub fn json_cyclotomic(c: &Cyclotomic) -> Value {
    json!({
        "order": c.order(),
        "coeffs": c.coeffs().iter().map(fmt_rational).collect::<Vec<_>>(),
    })
}

pub fn json_laurent(p: &LaurentPolynomial) -> Value {
    Value::Array(
        p.iter()
            .map(|(m, c)| Value::Array(vec![json_monomial(m), json_cyclotomic(c)]))
            .collect(),
    )
}

fn json_scalar_factor(nu: &ZetaMonomial, mult: u32) -> Value {
    json!({
        "zeta": fmt_exponent(&nu.turn()),
        "mu": json_monomial(nu.monomial()),
        "mult": mult,
    })
}

pub fn json_scalar(s: &TorusScalar) -> Value {
    json!({
        "num": json_laurent(s.numerator()),
        "den_unit": json_monomial(s.den_unit()),
        "den": s.den_factors()
            .iter()
            .map(|(nu, &m)| json_scalar_factor(nu, m))
            .collect::<Vec<_>>(),
    })
}

pub fn json_qfunction(f: &QFunction) -> Value {
    let num: Vec<Value> = f
        .num_terms()
        .map(|(k, c)| Value::Array(vec![json!(k), json_laurent(c)]))
        .collect();
    let den: Vec<Value> = f
        .den_q()
        .iter()
        .map(|(factor, &mult)| {
            json!({
                "a": factor.qpow(),
                "zeta": fmt_exponent(&factor.base().turn()),
                "mu": json_monomial(factor.base().monomial()),
                "mult": mult,
            })
        })
        .collect();
    let den_scalar: Vec<Value> = f
        .den_scalar()
        .iter()
        .map(|(nu, &m)| json_scalar_factor(nu, m))
        .collect();
    json!({
        "num": num,
        "den": den,
        "den_scalar": den_scalar,
        "den_unit": json_monomial(f.den_unit()),
    })
}

pub fn json_qlaurent(l: &QLaurent) -> Value {
    Value::Array(
        l.terms()
            .map(|(k, c)| Value::Array(vec![json!(k), json_scalar(c)]))
            .collect(),
    )
}

pub fn json_partial_fractions(pf: &PartialFractionForm) -> Value {
    json!({
        "laurent": json_qlaurent(&pf.laurent),
        "terms": pf.terms.iter().map(|t| json!({
            "locus": {
                "zeta": fmt_exponent(&t.locus.turn()),
                "mu": json_monomial(t.locus.monomial()),
            },
            "order": t.order,
            "coeff": json_scalar(&t.coeff),
        })).collect::<Vec<_>>(),
    })
}

pub fn json_recursion_report(report: &RecursionReport) -> Vec<Value> {
    report
        .checks
        .iter()
        .map(|c| {
            let mut entry = Map::new();
            entry.insert(
                "name".into(),
                Value::String(format!(
                    "recursion i={} j={} m={} d={}",
                    report.leg.i, report.leg.j, report.leg.m, c.degree
                )),
            );
            entry.insert("degree".into(), json!(c.degree));
            entry.insert("pass".into(), Value::Bool(c.pass));
            if let Some(lhs) = &c.lhs {
                entry.insert("lhs".into(), json_scalar(lhs));
            }
            if let Some(rhs) = &c.rhs {
                entry.insert("rhs".into(), json_scalar(rhs));
            }
            if let Some(note) = &c.note {
                entry.insert("note".into(), Value::String(note.clone()));
            }
            Value::Object(entry)
        })
        .collect()
}

/// The stable top-level envelope.
pub fn envelope(n: usize, d: u32, root_order: u32, result: Value, checks: Vec<Value>) -> Value {
    json!({
        "session": {"n": n, "d": d, "m": root_order},
        "result": result,
        "checks": checks,
    })
}
