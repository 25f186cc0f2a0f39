use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("relation is not bisurjective ({0} projection is not onto)")]
    NotBisurjective(&'static str),
    #[error("Möbius matrix is singular")]
    SingularMobius,
    #[error("relation is not Kronecker")]
    NotKronecker,

    #[error("pair is not skew-symmetric")]
    NotSkew,
    #[error("pair is not micro-Kronecker")]
    NotMicroKronecker,
    #[error("elementary divisor {divisor} occurs {count} times; skew pairs need even multiplicity")]
    OddElementaryDivisor { divisor: String, count: usize },
    #[error("internal verification failure: {0}")]
    InternalVerificationFailure(String),

    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    JacobiViolation(usize, usize, usize),
    #[error("2-cocycle identity fails on basis triple ({0}, {1}, {2})")]
    CocycleViolation(usize, usize, usize),
    #[error("map is not an involution")]
    NotInvolution,
    #[error("map does not reverse brackets on basis pair ({0}, {1})")]
    NotAntiAutomorphism(usize, usize),
    #[error("generators do not span the algebra (they generate a subalgebra of dimension {0})")]
    GeneratorsDontSpan(usize),
    #[error("polynomial {0} is not Ad*-invariant")]
    NotInvariant(usize),
    #[error("expected {expected} invariant polynomials (the rank), got {got}")]
    WrongPolyCount { expected: usize, got: usize },
    #[error(
        "dimension identity fails: dim = {dim}, web-degree reading gives {web}, literal-degree reading gives {literal}"
    )]
    DimensionIdentityFailure { dim: usize, web: usize, literal: usize },
    #[error("algebra table is not associative")]
    NotAssociative,
    #[error("algebra table is not commutative")]
    NotCommutative,
    #[error("algebra table has no unit")]
    NoUnit,
}

pub type Result<T> = std::result::Result<T, Error>;
