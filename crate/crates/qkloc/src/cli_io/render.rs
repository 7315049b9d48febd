//! LaTeX rendering of exact values, targeting the notational style of
//! the subject area (`\Lambda` subscripts, fractional exponents, roots
//! of unity as `\zeta`).

use num_traits::{One, Signed, Zero};

use crate::algebra::cyclotomic::Cyclotomic;
use crate::algebra::laurent::LaurentPolynomial;
use crate::algebra::monomial::{Monomial, ZetaMonomial};
use crate::algebra::rational::{fmt_exponent, fmt_rational};
use crate::algebra::scalar::TorusScalar;
use crate::qfunc::{PartialFractionForm, QFactor, QFunction};
use crate::Exponent;

pub fn latex_monomial(m: &Monomial) -> String {
    if m.is_identity() {
        return "1".into();
    }
    let mut out = String::new();
    for (i, e) in m.exponents().iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        if e.is_one() {
            out.push_str(&format!("\\Lambda_{{{}}}", i));
        } else {
            out.push_str(&format!("\\Lambda_{{{}}}^{{{}}}", i, fmt_exponent(e)));
        }
    }
    out
}

pub fn latex_zeta_monomial(zm: &ZetaMonomial) -> String {
    let turn = zm.turn();
    if turn.is_zero() {
        return latex_monomial(zm.monomial());
    }
    let zeta = if turn == Exponent::new(1, 2) {
        "-".to_string()
    } else {
        format!("\\zeta_{{{}}}^{{{}}}\\,", turn.denom(), turn.numer())
    };
    if zm.monomial().is_identity() {
        if turn == Exponent::new(1, 2) {
            return "-1".into();
        }
        return format!("\\zeta_{{{}}}^{{{}}}", turn.denom(), turn.numer());
    }
    format!("{}{}", zeta, latex_monomial(zm.monomial()))
}

pub fn latex_cyclotomic(c: &Cyclotomic) -> String {
    if let Some(r) = c.as_rational() {
        return fmt_rational(r);
    }
    let mut parts = Vec::new();
    for (k, coeff) in c.coeffs().iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        let zeta = match k {
            0 => String::new(),
            1 => format!("\\zeta_{{{}}}", c.order()),
            _ => format!("\\zeta_{{{}}}^{{{}}}", c.order(), k),
        };
        let mag = coeff.abs();
        let lead = if coeff.is_negative() { "-" } else { "+" };
        let body = if k > 0 && mag.is_one() {
            zeta
        } else {
            format!("{}{}", fmt_rational(&mag), zeta)
        };
        parts.push(format!("{}{}", lead, body));
    }
    let joined = parts.join(" ");
    joined.trim_start_matches('+').trim().to_string()
}

pub fn latex_laurent(p: &LaurentPolynomial) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (m, c) in p.iter() {
        let coeff = latex_cyclotomic(c);
        let body = if m.is_identity() {
            coeff
        } else if coeff == "1" {
            latex_monomial(m)
        } else if coeff == "-1" {
            format!("-{}", latex_monomial(m))
        } else if coeff.contains('+') || coeff.contains(' ') {
            format!("({}){}", coeff, latex_monomial(m))
        } else {
            format!("{}{}", coeff, latex_monomial(m))
        };
        parts.push(body);
    }
    let mut out = String::new();
    for (k, part) in parts.iter().enumerate() {
        if k > 0 && !part.starts_with('-') {
            out.push_str(" + ");
        } else if k > 0 {
            out.push(' ');
        }
        out.push_str(part);
    }
    out
}

fn latex_binomial(nu: &ZetaMonomial) -> String {
    if nu.turn() == Exponent::new(1, 2) {
        let inner = latex_monomial(nu.monomial());
        if inner == "1" {
            return "(1 + 1)".into();
        }
        return format!("(1 + {})", inner);
    }
    format!("(1 - {})", latex_zeta_monomial(nu))
}

pub fn latex_scalar(s: &TorusScalar) -> String {
    let num = latex_laurent(s.numerator());
    if s.den_factors().is_empty() && s.den_unit().is_identity() {
        return num;
    }
    let mut den = String::new();
    if !s.den_unit().is_identity() {
        den.push_str(&latex_monomial(s.den_unit()));
    }
    for (nu, &mult) in s.den_factors() {
        den.push_str(&latex_binomial(nu));
        if mult > 1 {
            den.push_str(&format!("^{{{}}}", mult));
        }
    }
    format!("\\frac{{{}}}{{{}}}", num, den)
}

fn latex_q_factor(factor: &QFactor) -> String {
    let q = if factor.qpow() == 1 {
        "q".to_string()
    } else {
        format!("q^{{{}}}", factor.qpow())
    };
    let base = factor.base();
    if base.is_identity() {
        return format!("(1 - {})", q);
    }
    if base.turn() == Exponent::new(1, 2) {
        if base.monomial().is_identity() {
            return format!("(1 + {})", q);
        }
        return format!("(1 + {}\\,{})", q, latex_monomial(base.monomial()));
    }
    format!("(1 - {}\\,{})", q, latex_zeta_monomial(base))
}

pub fn latex_qfunction(f: &QFunction) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut num_parts = Vec::new();
    for (k, c) in f.num_terms() {
        let coeff = latex_laurent(c);
        let body = match *k {
            0 => coeff,
            1 if coeff == "1" => "q".into(),
            1 if coeff == "-1" => "-q".into(),
            1 => format!("({})\\,q", coeff),
            _ if coeff == "1" => format!("q^{{{}}}", k),
            _ if coeff == "-1" => format!("-q^{{{}}}", k),
            _ => format!("({})\\,q^{{{}}}", coeff, k),
        };
        num_parts.push(body);
    }
    let num = crate::algebra::laurent::join_signed(&num_parts);
    let no_den =
        f.den_unit().is_identity() && f.den_scalar().is_empty() && f.den_q().is_empty();
    if no_den {
        return num;
    }
    let mut den = String::new();
    if !f.den_unit().is_identity() {
        den.push_str(&latex_monomial(f.den_unit()));
    }
    for (nu, &mult) in f.den_scalar() {
        den.push_str(&latex_binomial(nu));
        if mult > 1 {
            den.push_str(&format!("^{{{}}}", mult));
        }
    }
    for (factor, &mult) in f.den_q() {
        den.push_str(&latex_q_factor(factor));
        if mult > 1 {
            den.push_str(&format!("^{{{}}}", mult));
        }
    }
    format!("\\frac{{{}}}{{{}}}", num, den)
}

pub fn latex_partial_fractions(pf: &PartialFractionForm) -> String {
    let mut parts = Vec::new();
    if !pf.laurent.is_zero() {
        parts.push(latex_qfunction(&pf.laurent.to_qfunction()));
    }
    for t in &pf.terms {
        let den = if t.order == 1 {
            format!("(1 - q\\,{})", latex_zeta_monomial(&t.locus))
        } else {
            format!("(1 - q\\,{})^{{{}}}", latex_zeta_monomial(&t.locus), t.order)
        };
        parts.push(format!(
            "\\left[{}\\right]\\frac{{1}}{{{}}}",
            latex_scalar(&t.coeff),
            den
        ));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::context::Context;
    use crate::algebra::rational::exp;
    use crate::jfunction::j_coeff;

    #[test]
    fn latex_of_fractional_monomials() {
        let ctx = Context::projective(1, 2);
        let half = ctx.ratio(0, 1).unwrap().try_root(2, 2).unwrap();
        assert_eq!(
            latex_monomial(&half),
            "\\Lambda_{0}^{1/2}\\Lambda_{1}^{-1/2}"
        );
        let twisted = ZetaMonomial::new(exp(1, 3), half);
        assert!(latex_zeta_monomial(&twisted).starts_with("\\zeta_{3}^{1}"));
    }

    #[test]
    fn latex_of_j_coefficients() {
        let ctx = Context::projective(1, 2);
        let s = latex_qfunction(&j_coeff(&ctx, 0, 2).unwrap());
        assert!(s.starts_with("\\frac{1}{"));
        assert!(s.contains("(1 - q^{2})"));
        assert!(s.contains("\\Lambda_{0}\\Lambda_{1}^{-1}"));
    }
}
