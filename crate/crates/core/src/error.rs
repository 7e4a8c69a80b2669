use std::path::PathBuf;

/// Errors produced while parsing input, building or loading an index.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("symbol {0:?} is not in the alphabet")]
    UnknownSymbol(char),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("empty string in input set")]
    EmptyString,

    #[error("empty pattern")]
    EmptyPattern,

    #[error("invalid node id {0}")]
    InvalidNode(u32),

    #[error("position {pos} out of range for a string of length {len}")]
    PositionOutOfRange { pos: usize, len: usize },

    #[error("occurrence expansion unavailable: the trie carries no string-end markers")]
    ExpansionUnavailable,

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unsupported format version: {0:?}")]
    Version(String),

    #[error("checksum mismatch (stored {stored}, computed {computed})")]
    Checksum { stored: String, computed: String },

    #[error("{}invariant violation: {msg}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    Validation { line: Option<usize>, msg: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("cannot access {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    /// True for errors that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
