use thiserror::Error;

/// Every failure the library can report.
///
/// Variants map one-to-one onto the error names used in documents and CLI
/// diagnostics, so `Display` output stays stable.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("MalformedDocument: {0}")]
    MalformedDocument(String),
    #[error("NotATree: {0}")]
    NotATree(String),
    #[error("BadWeight: vertex {vertex} has weight {weight}")]
    BadWeight { vertex: String, weight: i64 },
    #[error("NotSymmetric")]
    NotSymmetric,
    #[error("DimensionMismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("ZeroCycle")]
    ZeroCycle,
    #[error("NotEffective: cycle has a negative coefficient")]
    NotEffective,
    #[error("NotNegativeDefinite")]
    NotNegativeDefinite,
    #[error("Singular")]
    Singular,
    #[error("SameVertex: {0}")]
    SameVertex(usize),
    #[error("UnknownVertex: {0}")]
    UnknownVertex(String),
    #[error("EqualityDetected: rows {0} and {1} of the ray basis coincide")]
    EqualityDetected(usize, usize),
    #[error("IntransitiveOrder: {0} < {1} < {2} but not {0} < {2}")]
    IntransitiveOrder(usize, usize, usize),
    #[error("CoefficientOverflow")]
    CoefficientOverflow,
    #[error("NotMinimal")]
    NotMinimal,
    #[error("NotRational: {0}")]
    NotRational(String),
    #[error("NoBambooExtension")]
    NoBambooExtension,
    #[error("NotInImage: quotient vertex {0} has no image")]
    NotInImage(usize),
    #[error("NotInjective: quotient vertices {0} and {1} share an image")]
    NotInjective(usize, usize),
    #[error("BadFamilyIndex: family {family} outside 1..={n}")]
    BadFamilyIndex { n: usize, family: usize },
    #[error("TruncationTooSmall: need at least {min}, got {got}")]
    TruncationTooSmall { min: usize, got: usize },
    #[error("ZeroPolynomial")]
    ZeroPolynomial,
    #[error("PreconditionViolated: {0}")]
    PreconditionViolated(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
