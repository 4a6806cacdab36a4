use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("exponent matrix is singular; not a Delsarte surface")]
    SingularMatrix,

    #[error("invalid exponent matrix: {0}")]
    InvalidMatrix(String),

    #[error("lattice basis is linearly dependent")]
    DependentBasis,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("element {0} fits none of the classification labels")]
    Unclassifiable(String),

    #[error("non-isolated singularity: {0}")]
    NonIsolatedSingularity(String),

    #[error("group of order {0} exceeds the supported range")]
    TooLarge(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown case id {0}")]
    UnknownCase(u32),

    #[error("no period up to {bound} fits the samples; unstable residue classes: {classes:?}")]
    NoPeriod { bound: u32, classes: Vec<u32> },

    #[error("internal logic error: {0}")]
    Internal(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
