use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    /// Element arity or kind does not match the ambient, or an indexed
    /// multiset has the wrong shape.
    #[error("structural error: {0}")]
    Structural(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A configured budget (nodes, decompositions, edges) would be exceeded.
    #[error("resource budget exceeded: {0}")]
    Resource(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
