//! Experiment driver for the `stagwalk` simulator: argument definitions,
//! subcommands and the table reproduction recipes.

use std::fmt;

pub mod args;
pub mod commands;
pub mod reproduce;

/// Exit status for a successful run, including runs with no valid peak.
pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;

#[derive(Debug)]
pub enum Failure {
    /// Bad flags, invalid configuration or unreadable/unwritable files.
    Usage(String),
    /// A numerical contract was broken: norm drift, an out-of-range
    /// amplitude, or a fit that cannot be computed.
    Numerical(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "error: {m}"),
            Failure::Numerical(m) => write!(f, "numerical error: {m}"),
        }
    }
}

impl std::error::Error for Failure {}

impl From<stagwalk::Error> for Failure {
    fn from(e: stagwalk::Error) -> Self {
        use stagwalk::Error::*;
        match e {
            NoPeak(_) | DegenerateFit(_) => Failure::Numerical(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}
