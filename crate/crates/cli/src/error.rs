use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] qm_core::Error),
    #[error("{0}")]
    Config(String),
    #[error("reading {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("element file {path}: {source}")]
    ElementFile {
        path: String,
        source: serde_json::Error,
    },
    #[error("writing output: {0}")]
    Write(#[from] std::io::Error),
    #[error("encoding json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("encoding csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("{failed} of {total} checks failed")]
    VerificationFailed { failed: usize, total: usize },
}

impl CliError {
    /// 1 verification failure, 2 usage or configuration, 3 numerical failure.
    pub fn exit_code(&self) -> u8 {
        use qm_core::Error as E;
        match self {
            CliError::VerificationFailed { .. } => 1,
            CliError::Core(E::LpNotOptimal(_) | E::PowerIterationCap(_) | E::NonFinite) => 3,
            CliError::Core(E::AgreementViolated { .. } | E::WitnessMismatch { .. }) => 1,
            _ => 2,
        }
    }
}
