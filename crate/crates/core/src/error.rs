use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("permutation must have at least one entry")]
    Empty,
    #[error("entries do not form a bijection of 1..={n}")]
    NonBijection { n: usize },
    #[error("cannot parse token {0:?} as a positive integer")]
    BadToken(String),
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("index {index} out of range 1..={n}")]
    OutOfRange { index: usize, n: usize },
    #[error("invalid transposition ({0}, {1})")]
    InvalidTransposition(usize, usize),
    #[error("index set must be strictly increasing and 1-based")]
    InvalidIndexSet,
    #[error("index set must be nonempty")]
    EmptyIndexSet,
    #[error("cycle repeats position {0}")]
    DuplicateCycleEntry(usize),
    #[error("invalid region rows [{0}, {1}] cols [{2}, {3}]")]
    InvalidRegion(usize, usize, usize, usize),
    #[error("{x} is not below {w} in Bruhat order")]
    NotBelow { x: String, w: String },
    #[error("x = w, so Delta(x, w) is empty")]
    EmptyDelta,
    #[error("phi precondition violated: {0}")]
    PhiPrecondition(&'static str),
    #[error("transposition {0} is not in R(x, w)")]
    NotInReflectionSet(String),
    #[error("n = {n} exceeds the oracle bound {bound}")]
    OracleBound { n: usize, bound: usize },
    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),
    #[error("malformed component: {0}")]
    MalformedComponent(String),
    #[error("{x} is not a maximal singular point of X_{w}")]
    NotMsp { x: String, w: String },
    #[error("integer overflow in polynomial arithmetic")]
    Overflow,
    #[error("negative coefficient in a Kazhdan-Lusztig polynomial")]
    NegativeCoefficient,
}

pub type Result<T> = std::result::Result<T, Error>;
