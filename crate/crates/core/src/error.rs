use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An operation was called with arguments outside its contract
    /// (wrong arity, wrong form degree, empty frame).
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("shape error: {0}")]
    Shape(String),

    /// The input is well-formed but lies outside the domain of the operation,
    /// e.g. asking for S2 membership at a point of S1.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("chart must declare exactly 5 coordinates, found {0}")]
    Arity(usize),

    #[error("unknown identifier `{name}` at line {line}, column {column}")]
    UnknownIdentifier {
        name: String,
        line: usize,
        column: usize,
    },

    #[error("type error at line {line}, column {column}: {message}")]
    Type {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid JSON at {pointer}: {message}")]
    Json { pointer: String, message: String },

    #[error("invalid rational literal `{0}`")]
    Rational(String),

    #[error("i/o error: {0}")]
    Io(String),

    /// An internal consistency check failed. Always a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Process exit code for the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invariant(_) => 2,
            _ => 1,
        }
    }
}
