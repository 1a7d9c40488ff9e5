use thiserror::Error;

/// Errors raised by the group engine.
///
/// Every variant carries owned strings so that errors can be cached next to
/// lazily computed artifacts and cloned out of them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group order exceeds the configured cap of {cap}")]
    OrderCapExceeded { cap: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),

    #[error("element index {index} out of range for a group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("set is not a subgroup")]
    NotASubgroup,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("invalid homomorphism: {0}")]
    InvalidHomomorphism(String),

    #[error("subgroup lattice exceeds the budget of {budget} subgroups")]
    LatticeBudgetExceeded { budget: usize },

    #[error("unsupported class: {0}")]
    UnsupportedClass(String),

    #[error("class {class} is not declared to be a {required}")]
    ClassPrecondition { class: String, required: &'static str },

    #[error("residual for {class} failed post-verification: the quotient is not in the class")]
    FormationWitnessFailure { class: String },

    #[error("radical for {class} failed post-verification: the join is not in the class")]
    FittingWitnessFailure { class: String },

    #[error("join of hypercentral normal subgroups is not hypercentral for {class} (order {order})")]
    HypercentreJoinFailure { class: String, order: usize },

    #[error("invalid chief factor: {0}")]
    InvalidFactor(String),

    #[error("group is not {0}-solvable")]
    NotPiSolvable(String),

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("cache version mismatch: found {found}, expected {expected}")]
    CacheVersionMismatch { found: u32, expected: u32 },

    #[error("corrupt cache entry: {0}")]
    CorruptCache(String),

    #[error("cache entry not found")]
    CacheMiss,

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// True for errors caused by a size limit rather than bad input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::OrderCapExceeded { .. } | Error::LatticeBudgetExceeded { .. }
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
