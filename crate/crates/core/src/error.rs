use thiserror::Error;

/// Errors raised by the group and character engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is reducible over GF({0})")]
    ReducibleModulus(u64),
    #[error("invalid field specification: {0}")]
    InvalidField(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("permutation degree {0} exceeds the cap of {1}")]
    DegreeTooLarge(usize, usize),
    #[error("group order {0} exceeds the element-table cap of {1}")]
    OrderTooLarge(u64, u64),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("prime {0} does not divide the group order")]
    PrimeDoesNotDivide(u64),
    #[error("self-check failed: {0}")]
    SelfCheckFailed(String),
    #[error("invalid central product: {0}")]
    SpecInvalid(String),
    #[error("class functions belong to different groups")]
    GroupMismatch,
    #[error("not a character: {0}")]
    NotACharacter(String),
    #[error("subgroup is not central")]
    NotCentral,
    #[error("part {0} does not lie over the central character")]
    IncompatibleCentralCharacter(usize),
    #[error("{0} is not an element of the parent group")]
    NotMember(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("catalog entry `{name}`: {detail}")]
    MetadataMismatch { name: String, detail: String },
    #[error("catalog entry `{0}` is oversized and is never built")]
    Oversized(String),
    #[error("{file}:{line}: {msg}")]
    Parse { file: String, line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
