use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] qgroth::Error),
}

impl CliError {
    /// 1 usage, 2 verification failure, 3 resource cap.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Core(qgroth::Error::Verification(_)) => 2,
            CliError::Core(qgroth::Error::ResourceCap(_)) => 3,
            CliError::Core(_) => 1,
        }
    }
}

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}
