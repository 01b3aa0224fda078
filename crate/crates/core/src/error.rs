use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid generator `{0}`")]
    InvalidGenerator(String),

    #[error("invalid coxeter system: {0}")]
    InvalidSpec(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("`{0}` is not a twisted involution")]
    NotTwistedInvolution(String),

    #[error("order precondition violated: {0}")]
    Order(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("not a polynomial in q: {0}")]
    NotQPoly(String),

    #[error("parity violation: {0} has an odd coefficient")]
    ParityViolation(String),

    #[error("coefficient overflow")]
    Overflow,

    #[error("resource limit exceeded: more than {cap} elements")]
    ResourceLimit { cap: usize },

    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("cache: {0}")]
    Cache(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Internal(_) | Error::Overflow => 3,
            Error::ResourceLimit { .. } => 4,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
