use thiserror::Error;

#[derive(Debug, Error)]
pub enum EdaError {
    #[error("file not found: {0}")]
    FileNotFound(String),

    #[error("parse error at line {line}: {reason}")]
    ParseError { line: u64, reason: String },

    #[error("input has no data rows")]
    EmptyInput,

    #[error("invalid chunk size {0}, must be at least 1")]
    InvalidChunkSize(usize),

    #[error("unknown config key `{key}`{}", suggestion.as_ref().map(|s| format!(", did you mean `{s}`?")).unwrap_or_default())]
    UnknownKey { key: String, suggestion: Option<String> },

    #[error("config key `{key}` expects {expected}, got `{got}`")]
    TypeMismatch { key: String, expected: &'static str, got: String },

    #[error("unknown column `{name}`; available columns: {}", available.join(", "))]
    UnknownColumn { name: String, available: Vec<String> },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported combination: {0}")]
    UnsupportedCombination(String),

    #[error("compute graph cycle detected at node {0}")]
    CycleDetected(usize),

    #[error("stage violation: reduce node {node} depends on finalize node {dep}")]
    StageViolation { node: usize, dep: usize },

    #[error("kernel `{node}` failed: {cause}")]
    KernelError { node: String, cause: String },

    #[error("no data: {0}")]
    NoData(String),

    #[error("degenerate spread: {0}")]
    DegenerateSpread(String),

    #[error("unknown chart kind `{0}`")]
    UnknownKind(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = EdaError> = std::result::Result<T, E>;
