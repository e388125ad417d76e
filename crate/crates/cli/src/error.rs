use std::fmt;

/// Failure classes with their process exit codes.
#[derive(Debug)]
pub enum CliError {
    /// A numerical gate failed (exit 1).
    Numeric(String),
    /// Bad arguments, bad config or an unsupported case (exit 2).
    Usage(String),
    /// A file could not be read or written (exit 3).
    Io(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Numeric(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Numeric(m) => write!(f, "numerical failure: {m}"),
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<abwave::Error> for CliError {
    fn from(e: abwave::Error) -> Self {
        use abwave::Error as E;
        match e {
            E::Convergence(_) | E::GridMismatch(_) | E::NonUnitary(_) => CliError::Numeric(e.to_string()),
            E::Domain(_) | E::UnsupportedOrder(_) | E::UnsupportedChannel(_) | E::InvalidParameter(_) => {
                CliError::Usage(e.to_string())
            }
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
