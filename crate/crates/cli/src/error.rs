use std::fmt;

/// CLI failure, carrying the process exit code contract:
/// 1 usage, 2 I/O, 3 verification or numerical failure.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Verification(Vec<String>),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Io(_) => 2,
            CliError::Verification(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Io(m) => write!(f, "I/O error: {m}"),
            CliError::Verification(names) => {
                write!(f, "verification failed: {}", names.join(", "))
            }
        }
    }
}

impl From<djc_core::Error> for CliError {
    fn from(e: djc_core::Error) -> Self {
        use djc_core::Error as E;
        match e {
            E::InvalidArgument(_) | E::UnsupportedConfiguration(_) | E::InvalidState(_) => {
                CliError::Usage(e.to_string())
            }
            E::NumericalFailure(_) | E::NumericalConsistency(_) => {
                CliError::Verification(vec![e.to_string()])
            }
        }
    }
}
