use thiserror::Error;

use crate::compat::CompatibilityViolation;
use crate::ground::SubsetMask;
use crate::represent::BetaSearchFailure;

/// Errors produced by the library.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("ground set needs at least 2 blocks, got {0}")]
    GroundSetTooSmall(usize),

    #[error("ground set with {0} blocks exceeds the supported maximum of 16")]
    GroundSetTooLarge(usize),

    #[error("block index {index} out of range for {m} blocks")]
    IndexOutOfRange { index: usize, m: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid increment sequence: {0}")]
    InvalidIncrements(String),

    #[error("invalid vertex ordering: {0}")]
    InvalidVertexOrder(String),

    #[error("family of minimal sets must be nonempty and contain only nonempty sets")]
    InvalidFamily,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("family is not compatible with the polymatroid: {0}")]
    Incompatible(CompatibilityViolation),

    #[error("block {block} has size {size}, which does not exceed g0 = {g0}")]
    BlockTooSmall { block: usize, size: u32, g0: u32 },

    #[error("block sizes must all be at least 2")]
    BlockSizeBelowTwo,

    #[error("vector exceeds block size at block {0}")]
    ExceedsBlockSizes(usize),

    #[error("relation is not reflexive at block {0}")]
    NotReflexive(usize),

    #[error("relation is not transitive via blocks {0}, {1}, {2}")]
    NotTransitive(usize, usize, usize),

    #[error("order-type letter codes are defined for m = 4, got m = {0}")]
    CodeUndefinedForM(usize),

    #[error("enumeration supports 2 <= m <= 5, got {0}")]
    EnumerationOutOfRange(usize),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("prime {p} is too small, need at least {min}")]
    PrimeTooSmall { p: u64, min: u64 },

    #[error("value {value} is outside the field of modulus {p}")]
    FieldValueOutOfRange { value: u64, p: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("representation rank check failed at subset {0}")]
    RepresentationInvalid(SubsetMask),

    #[error("no extension vector found: {0}")]
    BetaNotFound(BetaSearchFailure),

    #[error("port verification failed at subset {0}")]
    PortViolation(SubsetMask),

    #[error("scheme verification failed: {0}")]
    SchemeVerification(String),

    #[error("{participants} participants exceed the exhaustive verification cap of {cap}")]
    VerificationCapExceeded { participants: usize, cap: usize },

    #[error("subset is not authorized; no reconstruction coefficients exist")]
    Unauthorized,

    #[error("transform {0} does not preserve a valid increment sequence: {1}")]
    InvalidTransform(String, String),
}
