use std::fmt;

/// Exit status 2.
pub const USAGE: i32 = 2;
/// Exit status 1.
pub const DOMAIN: i32 = 1;

#[derive(Debug)]
pub enum CliError {
    /// Bad flag, bad value or bad config file.
    Usage(String),
    /// The computation itself failed, or its output could not be written.
    Domain(String),
}

impl CliError {
    pub fn from_core(e: hardy_core::Error) -> Self {
        match e {
            hardy_core::Error::InvalidArgument { name, reason } => {
                CliError::Usage(format!("invalid value for {}: {reason}", flag_name(name)))
            }
            e if !e.is_domain_error() => CliError::Usage(e.to_string()),
            e => CliError::Domain(e.to_string()),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => USAGE,
            CliError::Domain(_) => DOMAIN,
        }
    }
}

/// The command-line spelling of a core argument name.
pub fn flag_name(name: &str) -> String {
    format!("--{}", name.replace('_', "-"))
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => f.write_str(m),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Domain(format!("i/o: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Domain(format!("csv: {e}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Domain(format!("json: {e}"))
    }
}
