//! Textual equations: parsing, normalisation and matching to catalog families.

mod ast;
mod matcher;
mod norm;
mod parse;

pub use ast::{render, Expr};
pub use matcher::{family_expr, match_family, solve_text, MatchResult, TextSolution, MATCH_ORDER};
pub use norm::{normalize, Normalized};
pub use parse::{parse, ParseError};
