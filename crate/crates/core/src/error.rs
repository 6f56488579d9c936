use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown note letter in {0:?}")]
    UnknownNote(String),
    #[error("malformed key {text:?}: {reason}")]
    BadKey { text: String, reason: String },
    #[error("malformed triad {text:?}: {reason}")]
    BadTriad { text: String, reason: String },
    #[error("unknown scale kind {0:?}")]
    UnknownScaleKind(String),
    #[error("scale family {0} has no scales")]
    EmptyFamily(String),
    #[error("a modulation needs two distinct keys, got {0} twice")]
    SameKey(String),
    #[error("duplicate vertex label {0}")]
    DuplicateLabel(String),
    #[error("unknown preset {0:?} (expected major12, minor12 or combined24)")]
    UnknownPreset(String),
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(String),
    #[error("walk length must be at least 1")]
    ZeroSteps,
    #[error("line {line}: {message}")]
    Corpus { line: u64, message: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Source line for corpus diagnostics.
    pub fn line(&self) -> Option<u64> {
        match self {
            Error::Corpus { line, .. } => Some(*line),
            _ => None,
        }
    }
}
