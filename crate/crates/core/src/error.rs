use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("semitone step {0} is outside [-19, 19]")]
    SemitonesOutOfRange(i32),

    #[error("unknown interval letter {0:?}")]
    UnknownLetter(char),

    #[error("line {line}, column {column}: malformed token {token:?}")]
    MalformedToken {
        line: usize,
        column: usize,
        token: String,
    },

    #[error("line {line}: interval {from} -> {to} spans {semitones} semitones, outside [-19, 19]")]
    IntervalOutOfRange {
        line: usize,
        from: String,
        to: String,
        semitones: i32,
    },

    #[error("melody has fewer than two notes")]
    EmptyMelody,

    #[error("word is empty")]
    EmptyWord,

    #[error("word {0:?} has a single interval; scoring needs at least one pair")]
    WordTooShort(String),

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("corpus has no songs")]
    EmptyCorpus,

    #[error("word list needs at least two distinct words")]
    TooFewWords,

    #[error("sampling exhausted: {0}")]
    SamplingExhausted(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("snapshot line {line}: {message}")]
    Snapshot { line: usize, message: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn in_file(self, path: impl Into<PathBuf>) -> Error {
        Error::File {
            path: path.into(),
            source: Box::new(self),
        }
    }

    /// Process exit code for the command-line front end: 3 for data
    /// problems, 4 for numeric failures, 2 for configuration errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NonFinite(_) | Error::Degenerate(_) => 4,
            Error::Config(_) => 2,
            Error::File { source, .. } => source.exit_code(),
            _ => 3,
        }
    }
}
