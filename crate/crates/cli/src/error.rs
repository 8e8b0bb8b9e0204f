use std::fmt;

use satotate::Error;

/// Failure of a subcommand, carrying its exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(Error),
    Internal(String),
}

impl CliError {
    pub fn internal(e: impl fmt::Display) -> Self {
        CliError::Internal(e.to_string())
    }

    /// 1 usage, 2 data, 3 resource.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Internal(_) => 2,
            CliError::Lib(e) => match e {
                Error::Input(_) | Error::Domain(_) => 1,
                Error::Resource(_) => 3,
                Error::Parse { .. }
                | Error::Data(_)
                | Error::HasseViolation { .. }
                | Error::Coverage { .. }
                | Error::Io { .. } => 2,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Internal(m) => write!(f, "{m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}
