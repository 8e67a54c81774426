use std::fmt;

/// An error with its exit code: 1 for domain failures, 2 for bad input.
#[derive(Debug)]
pub enum CliError {
    Domain(String),
    Usage(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Usage(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Domain(s) | CliError::Usage(s) => f.write_str(s),
        }
    }
}

pub fn domain(e: impl fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

pub fn usage(e: impl fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}
