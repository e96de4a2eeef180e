//! The `.hsa` text format: presentations, Hopf tables, actions, coactions and
//! check directives. See the README for the grammar.

use thiserror::Error;

pub mod ast;
pub mod bundled;
pub mod convert;
pub mod lexer;
pub mod parser;
pub mod printer;
pub mod run;

pub use ast::{AlgebraDoc, BicrossDoc, CheckDirectives, GeneratorDoc, Poly, PresentationDoc, RelationDoc, Suite};
pub use convert::SetupError;
pub use parser::{parse_expression, parse_presentation};
pub use printer::{print_presentation, render_poly};
pub use run::{run_checks, Overrides};

use lexer::Pos;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("{line}:{col}: syntax error: {message}{}", expected_suffix(.expected))]
    Syntax { line: usize, col: usize, message: String, expected: Vec<String> },
    #[error("{line}:{col}: undeclared generator `{name}`")]
    UndeclaredGenerator { line: usize, col: usize, name: String },
    #[error("{line}:{col}: parity mismatch: {message}")]
    ParityMismatch { line: usize, col: usize, message: String },
    #[error("{line}:{col}: {message}")]
    Invalid { line: usize, col: usize, message: String },
}

fn expected_suffix(expected: &[String]) -> String {
    if expected.is_empty() {
        String::new()
    } else {
        format!("; expected one of: {}", expected.join(", "))
    }
}

impl DslError {
    pub(crate) fn syntax(pos: Pos, message: &str, expected: &[&str]) -> DslError {
        DslError::Syntax {
            line: pos.line,
            col: pos.col,
            message: message.to_string(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn position(&self) -> (usize, usize) {
        match self {
            DslError::Syntax { line, col, .. }
            | DslError::UndeclaredGenerator { line, col, .. }
            | DslError::ParityMismatch { line, col, .. }
            | DslError::Invalid { line, col, .. } => (*line, *col),
        }
    }
}
