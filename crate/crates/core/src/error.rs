use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("index must be a positive integer, got 0")]
    ZeroIndex,

    #[error("lower index {nu} must be strictly below upper index {n}")]
    EmptyRange { nu: u64, n: u64 },

    #[error("root order must be a finite real >= 1, got {0}")]
    RootOrder(f64),

    #[error("tolerance must be a finite positive real, got {0}")]
    Tolerance(f64),

    #[error("argument {x} outside the domain x >= {min} of {what}")]
    Domain {
        what: &'static str,
        x: f64,
        min: f64,
    },

    #[error("index {0} exceeds 2^53; floating-point evaluation would lose integer precision (use the exact floor instead)")]
    BeyondFloat(u64),

    #[error("oracle range of {len} terms exceeds the configured cap of {cap}")]
    OracleCap { len: u64, cap: u64 },

    #[error("split point nu={nu} is invalid for n={n}: need 1 <= nu <= n - 2")]
    SplitPoint { nu: u64, n: u64 },

    #[error(
        "tolerance {epsilon:e} cannot be certified for n={n} (best achievable bound {best:e})"
    )]
    Unattainable { n: u64, epsilon: f64, best: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
