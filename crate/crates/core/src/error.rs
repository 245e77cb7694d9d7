use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("{a} and {b} are not coprime")]
    NotCoprime { a: u64, b: u64 },
    #[error("{0} is even")]
    EvenInput(u64),
    #[error("field of order {0} is too large")]
    TooLarge(u64),
    #[error("zero has no multiplicative order")]
    ZeroElement,
    #[error("no element of order {n} in GF({q})")]
    NoSuchRoot { q: u64, n: u64 },
    #[error("q = {0} is not 3 mod 4")]
    BadResidue(u64),
    #[error("element budget of {cap} exceeded after {found} elements")]
    CapExceeded { cap: usize, found: usize },
    #[error("supplied element is not central: {0}")]
    NotCentral(String),
    #[error("action is not a homomorphism: {0}")]
    ActionNotHomomorphic(String),
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("not in the simple range: {0}")]
    NotSimpleRange(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not an isometry of the form")]
    NotIsometry,
    #[error("{p} does not divide the group order")]
    PNotDividing { p: u64 },
    #[error("characteristic is even")]
    EvenCharacteristic,
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("no closed formula covers {0}")]
    FamilyNotCovered(String),
    #[error("the prime must be odd")]
    EvenPrime,
    #[error("group is not simple: {0}")]
    NotSimple(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
