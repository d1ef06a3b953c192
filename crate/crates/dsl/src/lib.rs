//! A line-oriented text format for finite categories, functors, diagrams,
//! cleavages and diagram-opfibrations.
//!
//! [`Workspace::parse`] resolves and validates a file; [`print_workspace`]
//! writes the canonical form back out.

pub mod ast;
pub mod diag;
pub mod lexer;
pub mod parser;
pub mod printer;
pub mod samples;
pub mod workspace;

pub use ast::Kind;
pub use diag::{Class, Diagnostic, Law, Pos};
pub use printer::{dot, print_workspace};
pub use workspace::Workspace;
