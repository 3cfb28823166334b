use thiserror::Error;

/// Errors raised anywhere in the pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("arity mismatch for `{predicate}`: expected {expected}, found {found}")]
    Arity {
        predicate: String,
        expected: usize,
        found: usize,
    },

    #[error("namespace violation: {0}")]
    Namespace(String),

    #[error("ill-formed rule: {0}")]
    IllFormed(String),

    #[error("unknown source predicate `{0}`")]
    UnknownPredicate(String),

    #[error("interpretation is inconsistent with the ontology")]
    Inconsistent,

    #[error("{what} has {size} elements, above the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("{0}")]
    Io(String),
}

impl Error {
    pub fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    /// True for the resource-cap family (CLI exit code 3).
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
