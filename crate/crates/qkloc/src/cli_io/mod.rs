//! Expression parser, typed lowering, deterministic serialization
//! (text, JSON, LaTeX) and the command-line interface.

pub mod ast;
pub mod commands;
pub mod json;
pub mod lower;
pub mod parser;
pub mod render;

pub use ast::ExprAst;
pub use commands::{run, OutputFormat};
pub use lower::{lower, parse_and_lower, Lowered};
pub use parser::parse_expr;
