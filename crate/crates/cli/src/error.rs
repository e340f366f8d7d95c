use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("scenario error at {pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("scenario error at {pointer}: {source}")]
    Block { pointer: String, source: fedosov_core::Error },
    #[error(transparent)]
    Core(#[from] fedosov_core::Error),
}

impl CliError {
    pub fn schema(pointer: &str, message: impl Into<String>) -> Self {
        CliError::Schema { pointer: pointer.to_string(), message: message.into() }
    }

    /// 2 for failed internal identities, 1 for everything the input caused.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(fedosov_core::Error::Consistency(_)) => 2,
            _ => 1,
        }
    }
}

/// Attach a JSON pointer to errors raised while interpreting a block.
pub trait AtPointer<T> {
    fn at(self, pointer: &str) -> Result<T, CliError>;
}

impl<T> AtPointer<T> for fedosov_core::Result<T> {
    fn at(self, pointer: &str) -> Result<T, CliError> {
        self.map_err(|source| CliError::Block { pointer: pointer.to_string(), source })
    }
}
