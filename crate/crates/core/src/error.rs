use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("modulus must be at least 1")]
    ZeroModulus,

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: usize, right: usize },

    #[error("element {element} is outside [0, {modulus})")]
    ElementOutOfRange { element: usize, modulus: usize },

    #[error("interval [{a}, {b}] is reversed")]
    ReversedInterval { a: i64, b: i64 },

    #[error("interval [{a}, {b}] covers all of Z_{n}; use CyclicSet::full instead")]
    IntervalCoversGroup { n: usize, a: i64, b: i64 },

    #[error("{d} is not a unit modulo {n}")]
    NotAUnit { d: u64, n: usize },

    #[error("set is not symmetric")]
    NotSymmetric,

    #[error("0 belongs to the generating set")]
    ContainsZero,

    #[error("G1 together with -G1 does not cover Z_{n}")]
    NotHalfCover { n: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("element {element} of T is outside [0, {max}]")]
    TMemberOutOfRange { element: usize, max: usize },

    #[error("T must be nonempty")]
    EmptyT,

    #[error("fast path requires 0 in T")]
    FastPathInapplicable,

    #[error("search needs {required} candidates, budget is {limit}")]
    BudgetExceeded { required: u128, limit: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is divisible by 3")]
    DivisibleByThree(u64),

    #[error("construction hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("n = {n} is below the construction threshold: {constraint}")]
    BelowConstructionThreshold { n: usize, constraint: String },

    #[error("alpha = {0} is outside [0, 1/3]")]
    AlphaOutOfRange(f64),

    #[error("constructed set failed verification: {0}")]
    ConstructionFailed(String),

    #[error("set is not complete and sum-free")]
    NotCompleteSumFree,

    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable tag, used by the CLI error envelope.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ZeroModulus => "zero_modulus",
            Error::ModulusMismatch { .. } => "modulus_mismatch",
            Error::ElementOutOfRange { .. } => "element_out_of_range",
            Error::ReversedInterval { .. } => "reversed_interval",
            Error::IntervalCoversGroup { .. } => "interval_covers_group",
            Error::NotAUnit { .. } => "not_a_unit",
            Error::NotSymmetric => "not_symmetric",
            Error::ContainsZero => "contains_zero",
            Error::NotHalfCover { .. } => "not_half_cover",
            Error::InvalidParameters(_) => "invalid_parameters",
            Error::TMemberOutOfRange { .. } => "t_member_out_of_range",
            Error::EmptyT => "empty_t",
            Error::FastPathInapplicable => "fast_path_inapplicable",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::NotPrime(_) => "not_prime",
            Error::DivisibleByThree(_) => "divisible_by_three",
            Error::Hypothesis(_) => "hypothesis",
            Error::BelowConstructionThreshold { .. } => "below_construction_threshold",
            Error::AlphaOutOfRange(_) => "alpha_out_of_range",
            Error::ConstructionFailed(_) => "construction_failed",
            Error::NotCompleteSumFree => "not_complete_sum_free",
            Error::InvalidConfig(_) => "invalid_config",
            Error::Io(_) => "io",
        }
    }
}
