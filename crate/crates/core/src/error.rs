use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    Dimension { left: String, right: String },

    #[error("not invertible: {0}")]
    NotInvertible(String),

    #[error("unsupported field: {0}")]
    UnsupportedField(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("axiom failure: {0}")]
    Axiom(String),

    #[error("not a morphism: {0}")]
    Morphism(String),

    #[error("missing structure: {0}")]
    Missing(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unbound name {name:?} at line {line}, column {column}")]
    Unbound {
        name: String,
        line: usize,
        column: usize,
    },

    #[error("shape error in `{node}` at line {line}, column {column}: {message}")]
    Shape {
        node: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("too large: {0}")]
    TooLarge(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
