use thiserror::Error;

/// Everything that can go wrong inside the kernel.
///
/// The variant name doubles as the machine-readable error tag in CLI reports,
/// see [`Error::name`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("coefficient {0} is not invertible in the coefficient field")]
    NotInvertible(String),

    #[error("invalid field characteristic {0}: must be 0 or a prime")]
    InvalidCharacteristic(u64),

    #[error("inhomogeneous input: {0}")]
    Inhomogeneous(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("index {index} outside the computed range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("module has infinite length{0}")]
    InfiniteLength(String),

    #[error("Tor_{index} has infinite length: the ring is not an isolated singularity along this pair")]
    NonIsolatedSingularity { index: usize },

    #[error("periodicity witness failed: lengths of Tor_{first}..Tor_{last} are {lengths:?}")]
    PeriodicityViolation {
        first: usize,
        last: usize,
        lengths: Vec<u64>,
    },

    #[error("resolution is not stable by length {0}")]
    NotStabilized(usize),

    #[error("matrix factorization check failed: {0}")]
    FactorizationCheck(String),

    #[error("module does not have finite length")]
    NotFiniteLength,

    #[error("module does not have finite projective dimension")]
    NotFinitePd,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("operation requires all variable weights to be 1")]
    NonUnitWeights,

    #[error("module is not torsion")]
    NotTorsion,

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("integer overflow: {0}")]
    Overflow(String),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "ParseError",
            Error::UnknownVariable(_) => "UnknownVariable",
            Error::NotInvertible(_) => "NotInvertible",
            Error::InvalidCharacteristic(_) => "InvalidCharacteristic",
            Error::Inhomogeneous(_) => "InhomogeneousError",
            Error::InvalidRing(_) => "InvalidRing",
            Error::Shape(_) => "ShapeMismatch",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::InfiniteLength(_) => "InfiniteLength",
            Error::NonIsolatedSingularity { .. } => "NonIsolatedSingularity",
            Error::PeriodicityViolation { .. } => "PeriodicityViolation",
            Error::NotStabilized(_) => "NotStabilized",
            Error::FactorizationCheck(_) => "FactorizationCheck",
            Error::NotFiniteLength => "NotFiniteLength",
            Error::NotFinitePd => "NotFinitePd",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::NonUnitWeights => "NonUnitWeights",
            Error::NotTorsion => "NotTorsion",
            Error::NotSymmetric => "NotSymmetric",
            Error::Overflow(_) => "Overflow",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
