//! Parsing, evaluation and reports for the `brauer` command-line tool.

pub mod ast;
pub mod eval;
pub mod parse;
pub mod report;
pub mod run;

pub use run::{CliError, Command, Residue, Session};
