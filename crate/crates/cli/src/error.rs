//! CLI error categories mapped onto the frozen exit-code contract.

use mdich_core::{ExtractError, HstError, InstanceError, MetricError, OracleError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPS: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;
pub const EXIT_DOMAIN: i32 = 5;

#[derive(Debug)]
pub enum CliError {
    /// Bad parameters, malformed input files, I/O problems: exit 2.
    Usage(String),
    /// A configured cap was exceeded: exit 3.
    Caps(String),
    /// A result failed self-verification (a defect signal): exit 4.
    Verification(String),
    /// A legitimate domain error (named precondition failure): exit 5.
    Domain { name: String, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Caps(_) => EXIT_CAPS,
            CliError::Verification(_) => EXIT_VERIFICATION,
            CliError::Domain { .. } => EXIT_DOMAIN,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Caps(m) => write!(f, "cap exceeded: {m}"),
            CliError::Verification(m) => write!(f, "verification failure: {m}"),
            CliError::Domain { name, message } => write!(f, "{name}: {message}"),
        }
    }
}

impl std::error::Error for CliError {}

/// Variant name of a debug-printable error, e.g. "TripleTooFlat".
fn variant_name(debug: &str) -> String {
    debug
        .split(|c: char| c == ' ' || c == '{' || c == '(')
        .next()
        .unwrap_or("Error")
        .to_string()
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(format!("i/o: {e}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Usage(format!("json: {e}"))
    }
}

impl From<MetricError> for CliError {
    fn from(e: MetricError) -> Self {
        CliError::Domain { name: variant_name(&format!("{e:?}")), message: e.to_string() }
    }
}

impl From<HstError> for CliError {
    fn from(e: HstError) -> Self {
        match &e {
            HstError::BadParameters(_) => CliError::Usage(e.to_string()),
            _ => CliError::Domain { name: variant_name(&format!("{e:?}")), message: e.to_string() },
        }
    }
}

impl From<ExtractError> for CliError {
    fn from(e: ExtractError) -> Self {
        match &e {
            ExtractError::InvalidParameter(_) => CliError::Usage(e.to_string()),
            _ => CliError::Domain { name: variant_name(&format!("{e:?}")), message: e.to_string() },
        }
    }
}

impl From<InstanceError> for CliError {
    fn from(e: InstanceError) -> Self {
        match &e {
            InstanceError::SizeCapExceeded { .. } => CliError::Caps(e.to_string()),
            _ => CliError::Domain { name: variant_name(&format!("{e:?}")), message: e.to_string() },
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match &e {
            OracleError::CapExceeded { .. } => CliError::Caps(e.to_string()),
            OracleError::BadParameters(_) => CliError::Usage(e.to_string()),
            OracleError::Metric(m) => CliError::from(m.clone()),
        }
    }
}
