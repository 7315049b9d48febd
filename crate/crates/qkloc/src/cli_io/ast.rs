//! Expression syntax tree for the command-line parser.

use std::fmt;

/// Arithmetic expression over integers, `q`, the Hopf generator `P`,
/// and the torus characters `L0..LN`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprAst {
    Int(i64),
    Q,
    P,
    /// `L<index>`
    Var(usize),
    Neg(Box<ExprAst>),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Div(Box<ExprAst>, Box<ExprAst>),
    /// Integer powers only.
    Pow(Box<ExprAst>, i64),
}

impl fmt::Display for ExprAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprAst::Int(n) => write!(f, "{}", n),
            ExprAst::Q => write!(f, "q"),
            ExprAst::P => write!(f, "P"),
            ExprAst::Var(i) => write!(f, "L{}", i),
            ExprAst::Neg(a) => write!(f, "(- {})", a),
            ExprAst::Add(a, b) => write!(f, "(+ {} {})", a, b),
            ExprAst::Sub(a, b) => write!(f, "(- {} {})", a, b),
            ExprAst::Mul(a, b) => write!(f, "(* {} {})", a, b),
            ExprAst::Div(a, b) => write!(f, "(/ {} {})", a, b),
            ExprAst::Pow(a, k) => write!(f, "(^ {} {})", a, k),
        }
    }
}
