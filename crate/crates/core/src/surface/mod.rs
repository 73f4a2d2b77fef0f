//! Concrete syntax: lexer, parser, printer and elaboration of `.cd` files.

mod ast;
mod lexer;
mod parser;
mod printer;
mod source;

pub use ast::Expr;
pub use parser::{is_keyword, parse, parse_expr, parse_formula, ParseError};
pub use source::{elaborate, parse_proof, CheckedDef, Def, Directive, SourceFile};

use thiserror::Error;

use crate::typing::TypingError;

#[derive(Debug, Error)]
pub enum SurfaceError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Typing(#[from] TypingError),
}
