use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input text or records that do not parse or violate a schema.
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial is reducible: {0}")]
    Reducible(String),
    #[error("interval [{low}, {high}] does not isolate a root")]
    NotIsolating { low: String, high: String },
    #[error("interval endpoint {0} is a root")]
    EndpointIsRoot(String),
    #[error("element is zero")]
    ZeroElement,
    #[error("element or place belongs to a different field")]
    FieldMismatch,
    #[error("place index {index} out of range ({count} real places)")]
    PlaceOutOfRange { index: usize, count: usize },
    #[error("real place {0} is not ramified in the extension")]
    PlaceNotRamified(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A nonzero element vanished at a real root: the defining polynomial of a
    /// field whose irreducibility was only asserted is in fact reducible.
    #[error("irreducibility inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Malformed(_) => 2,
            Error::Inconsistent(_) => 4,
            _ => 3,
        }
    }
}
