use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("level must be a positive integer, got {0}")]
    InvalidLevel(u64),
    #[error("generator {gen} is not a unit modulo {level}")]
    NonUnitGenerator { level: u64, gen: i64 },
    #[error("{d} does not divide {level}")]
    NotADivisor { level: u64, d: u64 },
    #[error("{q} is not an exact divisor of {level}")]
    NotExactDivisor { level: u64, q: u64 },
    #[error("pair ({x} : {y}) is not primitive modulo {level}")]
    NotPrimitive { level: u64, x: i64, y: i64 },
    #[error("{x} is not coprime to {d}")]
    NotCoprime { x: i64, d: u64 },
    #[error("cusps with d = {d} at level {level} are regular (gcd(d, N/d) = 1)")]
    NotIrregular { level: u64, d: u64 },
    #[error("level mismatch: expected {expected}, got {found}")]
    LevelMismatch { expected: u64, found: u64 },
    #[error("operation is not defined for the cusps of {0}")]
    UnsupportedGroup(String),
    #[error("S_p is only available for p = 2 or 3, got {0}")]
    BadP(u64),
    #[error("{p}^2 does not divide the level {level}")]
    LevelNotDivisible { p: u64, level: u64 },
    #[error("{p} does not divide M = {m}")]
    PNotDividingM { p: u64, m: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("criterion needs genus at least 2, got {0}")]
    BadGenus(i64),
    #[error("{curve} has genus {genus}, at least 2 is required")]
    GenusTooSmall { curve: String, genus: u64 },
    #[error("automorphism order must be at least 2, got {0}")]
    BadOrder(i64),
    #[error("certified non-gaps leave {found} gaps below 2g, expected {expected}")]
    InconsistentGapCount { expected: usize, found: usize },
    #[error("eta index {r} is divisible by the level {level}")]
    RCongruentZero { level: u64, r: i64 },
    #[error("truncation {0} is too small to determine the series")]
    TruncationTooSmall(i64),
    #[error("eta quotient fails the modularity screen: {0}")]
    NotModular(String),
    #[error("order at cusp {cusp} is not an integer: {order}")]
    NonIntegralOrder { cusp: String, order: String },
    #[error("order at {cusp}: closed form {closed_form}, series {series}")]
    OrderMismatch {
        cusp: String,
        closed_form: String,
        series: String,
    },
    #[error("divisor has nonzero degree {0}")]
    NonzeroDegree(String),
    #[error("genus formula produced a non-integral or negative value {0}")]
    NonIntegralGenus(String),
}

impl Error {
    /// True for failures that indicate a broken invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::NonIntegralGenus(_)
                | Error::NonzeroDegree(_)
                | Error::NonIntegralOrder { .. }
                | Error::OrderMismatch { .. }
        )
    }

    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidLevel(_) => "InvalidLevel",
            Error::NonUnitGenerator { .. } => "NonUnitGenerator",
            Error::NotADivisor { .. } => "NotADivisor",
            Error::NotExactDivisor { .. } => "NotExactDivisor",
            Error::NotPrimitive { .. } => "NotPrimitive",
            Error::NotCoprime { .. } => "NotCoprime",
            Error::NotIrregular { .. } => "NotIrregular",
            Error::LevelMismatch { .. } => "LevelMismatch",
            Error::UnsupportedGroup(_) => "UnsupportedGroup",
            Error::BadP(_) => "BadP",
            Error::LevelNotDivisible { .. } => "LevelNotDivisible",
            Error::PNotDividingM { .. } => "PNotDividingM",
            Error::NotPrime(_) => "NotPrime",
            Error::BadGenus(_) => "BadGenus",
            Error::GenusTooSmall { .. } => "GenusTooSmall",
            Error::BadOrder(_) => "BadOrder",
            Error::InconsistentGapCount { .. } => "InconsistentGapCount",
            Error::RCongruentZero { .. } => "RCongruentZero",
            Error::TruncationTooSmall(_) => "TruncationTooSmall",
            Error::NotModular(_) => "NotModular",
            Error::NonIntegralOrder { .. } => "NonIntegralOrder",
            Error::OrderMismatch { .. } => "OrderMismatch",
            Error::NonzeroDegree(_) => "NonzeroDegree",
            Error::NonIntegralGenus(_) => "NonIntegralGenus",
        }
    }
}
