use std::fmt;

use tempoc_core::Error;

/// Error carrying the process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

pub const USAGE: i32 = 2;
pub const PARSE: i32 = 3;
pub const BUDGET: i32 = 4;

impl Failure {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::new(USAGE, message)
    }

    /// Any core error raised while reading user-supplied input counts as a
    /// parse error.
    pub fn input(path: &str, e: Error) -> Self {
        Self::new(PARSE, format!("{path}: {e}"))
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } => PARSE,
            Error::BudgetExceeded(_) | Error::BagTooLarge(_) => BUDGET,
            Error::InvalidParameter(_) | Error::ExactTooLarge { .. } => USAGE,
            _ => 1,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::new(1, e.to_string())
    }
}
