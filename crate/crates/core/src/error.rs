use thiserror::Error;

/// Everything that can go wrong constructing inputs or evaluating the
/// estimator, the solver, or the oracles.
#[derive(Debug, Error)]
pub enum Error {
    #[error("weight vector is empty")]
    EmptyWeights,

    #[error("weight at index {index} is negative ({value})")]
    NegativeWeight { index: usize, value: f64 },

    #[error("weight at index {index} is not finite")]
    NonFiniteWeight { index: usize },

    #[error("weights sum to zero")]
    ZeroTotalWeight,

    #[error("probabilities sum to {sum:.12}, outside 1 +/- {tolerance:e}")]
    NotNormalized { sum: f64, tolerance: f64 },

    #[error("mixture weight w = {0} outside [0, 1]")]
    WeightOutOfRange(f64),

    #[error("zipf exponent must be finite, got {0}")]
    NonFiniteExponent(f64),

    #[error("distribution has {dist} symbols but sample has {sample} counts")]
    LengthMismatch { dist: usize, sample: usize },

    #[error("sample is empty (counts sum to zero)")]
    EmptySample,

    #[error("sample size n must be at least {min}, got {got}")]
    SampleSizeTooSmall { min: u64, got: u64 },

    #[error("occupancy order k must be 1 or 2, got {0}")]
    UnsupportedOccupancyOrder(u64),

    #[error("brute-force oracle requires m^n <= {max} sequences, got {states:e}; instance too large for oracle")]
    OracleTooLarge { states: f64, max: u64 },

    #[error("lambert_w0 is defined for x >= -1/e, got {0}")]
    LambertDomain(f64),

    #[error("beta kernel exponents must be positive and finite, got a = {a}, b = {b}")]
    NonPositiveShape { a: f64, b: f64 },

    #[error("alphabet size m must be at least 2, got {0}")]
    AlphabetTooSmall(u64),

    #[error("cannot parse alphabet size from {0:?} (expected an integer or \"inf\")")]
    ParseAlphabet(String),

    #[error("phase-curve ratio must be positive and finite, got {0}")]
    InvalidRatio(f64),

    #[error("trial count must be at least 2, got {0}")]
    TooFewTrials(u64),

    /// Raised instead of silently clamping if the extremal support formula
    /// ever leaves the alphabet; no feasible input is known to trigger it.
    #[error("extremal support {support} exceeds alphabet size {m}")]
    SupportExceedsAlphabet { support: u64, m: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
