use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("not a flat-torus isometry: {0}")]
    NotIsometry(String),
    #[error("group closure exceeded the cap of {cap} elements")]
    ClosureCap { cap: usize },
    #[error("fixed component of dimension {dimension} found where only circles are allowed")]
    NotCircle { dimension: usize },
    #[error("matrix is not diagonal with entries +-1")]
    NotDiagonal,
    #[error("odd number of -1 entries ({count}); matrix is not in SO(n)")]
    OddNegativeCount { count: usize },
    #[error("generators {0} and {1} do not commute")]
    NotCommuting(usize, usize),
    #[error("generator {0} is not an involution")]
    NotInvolution(usize),
    #[error("resolved Betti not certified: {0}")]
    NotCertified(String),
    #[error("outside the domain: {0}")]
    Domain(String),
    #[error("metric is not positive definite at {0}")]
    NotPositiveDefinite(String),
    #[error("finite-difference step underflow (h = {0:e})")]
    StepUnderflow(f64),
    #[error("degenerate fit: {points} points, need at least 4")]
    DegenerateFit { points: usize },
    #[error("zero direction vector in torus action generator {0}")]
    ZeroDirection(usize),
    #[error("covariance rule is not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = core::result::Result<T, Error>;
