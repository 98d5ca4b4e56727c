use thiserror::Error;

/// Errors raised by the invariant engines, constructors and the census loader.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum KnotError {
    /// Input text does not match the expected grammar.
    #[error("syntax error: {0}")]
    Syntax(String),
    /// Input parses but violates a structural invariant (arc pairing, planarity, connectivity).
    #[error("validation error: {0}")]
    Validation(String),
    /// Arguments outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A configured size cap was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// The floating-point error bound exceeds what the requested precision allows.
    #[error("precision error: {0}")]
    Precision(String),
    /// A census row lacks a value the operation needs.
    #[error("missing data: {0}")]
    MissingData(String),
    /// A census file has the wrong header or column layout.
    #[error("schema error: {0}")]
    Schema(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl KnotError {
    /// Wraps the message with the knot id and operation that produced it.
    pub fn context(self, knot: &str, op: &str) -> KnotError {
        let wrap = |m: String| format!("{knot}: {op}: {m}");
        match self {
            KnotError::Syntax(m) => KnotError::Syntax(wrap(m)),
            KnotError::Validation(m) => KnotError::Validation(wrap(m)),
            KnotError::Domain(m) => KnotError::Domain(wrap(m)),
            KnotError::Resource(m) => KnotError::Resource(wrap(m)),
            KnotError::Precision(m) => KnotError::Precision(wrap(m)),
            KnotError::MissingData(m) => KnotError::MissingData(wrap(m)),
            KnotError::Schema(m) => KnotError::Schema(wrap(m)),
            KnotError::Io(m) => KnotError::Io(wrap(m)),
        }
    }
}

impl From<std::io::Error> for KnotError {
    fn from(e: std::io::Error) -> Self {
        KnotError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, KnotError>;
