use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("order relation has a cycle through `{0}` and `{1}`")]
    Cycle(String, String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("poset too large for this operation ({size} elements, limit {limit})")]
    TooLarge { size: usize, limit: usize },
    #[error("set is not directed")]
    NotDirected,
    #[error("family is not directed")]
    NotDirectedFamily,
    #[error("operation not supported on this backend: {0}")]
    BackendUnsupported(&'static str),
    #[error("set cannot be represented: {0}")]
    NonRepresentableSet(String),
    #[error("finite set must be nonempty")]
    EmptyFinSet,
    #[error("dcpo is not quasi-continuous")]
    NotQuasiContinuous,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("no witness found: {0}")]
    NoWitness(String),
    #[error("index mismatch: {0}")]
    IndexMismatch(String),
    #[error("ideal `{0}` is not available on this index")]
    UnsupportedIdeal(&'static str),
    #[error("invalid net: {0}")]
    InvalidNet(String),
    #[error("net class must contain the constant nets")]
    NetClassTooSmall,
    #[error("family of sets is not a topology: {0}")]
    NotATopology(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("internal cross-check disagreed: {0}")]
    ConsistencyViolation(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
