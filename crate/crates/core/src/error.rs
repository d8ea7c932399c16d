use thiserror::Error;

/// Errors raised by constructions and checks in this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed cycle notation: {0}")]
    MalformedCycle(String),
    #[error("point {point} out of range 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("group order exceeds the configured bound {bound}")]
    OrderBoundExceeded { bound: usize },
    #[error("subgroup is not contained in the ambient group")]
    NotContained,
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("map is not injective")]
    NotInjective,
    #[error("subgroup is not a {p}-group")]
    NotPGroup { p: u32 },
    #[error("subgroup is not {p}-centric: {reason}")]
    NotCentric { p: u32, reason: String },
    #[error("group is not abelian")]
    NotAbelian,
    #[error("{p} divides |W| = {order}")]
    PrimeDividesOrder { p: u32, order: usize },
    #[error("automorphism set is not closed under composition")]
    NotClosed,
    #[error("subgroup is not a Sylow {p}-subgroup")]
    NotSylow { p: u32 },
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u32, u32),
    #[error("biset action is not free: {0}")]
    NotFree(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("cohomology degree {0} not supported (0..=3)")]
    DegreeUnsupported(usize),
    #[error("fusion system is malformed: {0}")]
    MalformedFusionSystem(String),
    #[error("fusion system has no group realization")]
    NotRealized,
    #[error("idempotent iteration did not converge within {0} steps")]
    NoConvergence(usize),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("not a subalgebra: {0}")]
    NotSubalgebra(String),
    #[error("degree {degree} exceeds bound {bound}")]
    DegreeBoundExceeded { degree: u32, bound: u32 },
    #[error("coefficient has a denominator divisible by {p}")]
    NotLocal { p: u32 },
    #[error("unsupported precision: {0}")]
    Precision(String),
    #[error("search bound exceeded: {0}")]
    SearchBound(String),
}

pub type Result<T> = std::result::Result<T, Error>;
