//! The family description language.
//!
//! ```text
//! # mixed tails
//! wo(1*n + 1) for n in nat;
//! wo(w) x 14;
//! wo(w + 4) x aleph 1;
//! wo(w + 1 + 2*n) for n in nat;
//! rwo(w^2*3 + 5) x inf;
//! ```
//!
//! Each statement is an orientation keyword (`wo` or `rwo`), a chain type in
//! parentheses, and an optional multiplicity `x NAT`, `x inf` or
//! `x aleph NAT`. A chain type that mentions a loop variable declared with
//! `for IDENT in nat` (inside or after the parentheses) denotes one chain per
//! natural number.

mod parser;
mod print;

use std::fmt;

use serde::Serialize;

use crate::error::{FamilyError, OrdinalError};

pub use parser::{parse, parse_ordinal};
pub use print::{print, print_entry};

/// Byte offsets into the source text.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    pub fn new(start: usize, end: usize) -> Self {
        SourceSpan { start, end }
    }

    pub fn join(self, other: SourceSpan) -> Self {
        SourceSpan::new(self.start.min(other.start), self.end.max(other.end))
    }

    /// One-based line and column of `start`.
    pub fn line_col(&self, text: &str) -> (usize, usize) {
        let before = &text[..self.start.min(text.len())];
        let line = before.matches('\n').count() + 1;
        let col = before.rfind('\n').map_or(before.len(), |i| before.len() - i - 1) + 1;
        (line, col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Unexpected { expected: Vec<String>, found: String },
    Invalid(String),
    Ordinal(OrdinalError),
    Family(FamilyError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub span: SourceSpan,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub fn unexpected(span: SourceSpan, expected: &[&str], found: impl Into<String>) -> Self {
        ParseError {
            span,
            kind: ParseErrorKind::Unexpected {
                expected: expected.iter().map(|s| s.to_string()).collect(),
                found: found.into(),
            },
        }
    }

    pub fn invalid(span: SourceSpan, message: impl Into<String>) -> Self {
        ParseError {
            span,
            kind: ParseErrorKind::Invalid(message.into()),
        }
    }

    pub fn family(span: SourceSpan, e: FamilyError) -> Self {
        ParseError {
            span,
            kind: ParseErrorKind::Family(e),
        }
    }

    pub fn expected(&self) -> &[String] {
        match &self.kind {
            ParseErrorKind::Unexpected { expected, .. } => expected,
            _ => &[],
        }
    }

    /// Renders the error with a line and column computed from `text`.
    pub fn render(&self, text: &str) -> String {
        let (line, col) = self.span.line_col(text);
        format!("{line}:{col}: {self}")
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::Unexpected { expected, found } => {
                write!(f, "expected {}, found {found}", expected.join(" or "))
            }
            ParseErrorKind::Invalid(m) => f.write_str(m),
            ParseErrorKind::Ordinal(e) => write!(f, "{e}"),
            ParseErrorKind::Family(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ParseError {}
