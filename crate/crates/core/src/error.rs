use thiserror::Error;

/// A circulant system that has no solution, reported by [`crate::invert_unit`].
///
/// `matrix` is the n×n circulant of the input (row `i`, column `j` holds the
/// coefficient of `t^{(i-j) mod n}`) reduced mod `modulus`. The system is
/// singular modulo `prime`, a prime factor of `modulus`, where elimination
/// found no pivot in column `column`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularSystem {
    pub modulus: u64,
    pub prime: u64,
    pub column: usize,
    pub matrix: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: (n={left_n}, m={left_m}) vs (n={right_n}, m={right_m})")]
    DimensionMismatch {
        left_n: u32,
        left_m: u64,
        right_n: u32,
        right_m: u64,
    },

    #[error("element is not a unit over Z/{}Z: circulant system singular mod {} at column {}", .0.modulus, .0.prime, .0.column)]
    NotInvertible(Box<SingularSystem>),

    #[error("operation requires a positive coefficient modulus")]
    ModulusRequired,

    #[error("cannot reduce coefficients from modulus {from} to modulus {to}")]
    IncompatibleModulus { from: u64, to: u64 },

    #[error("multiplier {s} is not coprime to {n}")]
    InvalidMultiplier { s: i64, n: u32 },

    #[error("group order must be at least {min}, got {n}")]
    InvalidOrder { n: u32, min: u32 },

    #[error("L({n};{k}) is not a lens space: gcd(k, n) must be 1")]
    InvalidLensSpace { n: u32, k: i64 },

    #[error("component index {l} is outside [1, {}]", .n - 1)]
    InvalidComponent { l: i64, n: u32 },

    #[error("winding parameter m={m} gives a negative loop length for l={l}")]
    NegativeWinding { l: u32, m: i64 },

    #[error("index {index} is outside [1, {}] or has no torsion generator for n={n}", .n - 1)]
    InvalidIndex { index: i64, n: u32 },

    #[error("invalid torsion expression: {0}")]
    InvalidTorsionExpression(String),

    #[error("maps must join lens spaces with the same fundamental group, got n={source_n} and n={target_n}")]
    MismatchedSpaces { source_n: u32, target_n: u32 },

    #[error("L({n};{k}) and L({n};{k2}) are not homotopy equivalent")]
    NotHomotopyEquivalent { n: u32, k: u32, k2: u32 },

    #[error("not implemented: {0}")]
    NotImplemented(String),

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
