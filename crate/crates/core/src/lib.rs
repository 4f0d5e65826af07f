//! Mean of the square roots of the first `n` integers,
//! `Sigma(n) = (1/n) sum_{k=1}^{n} sqrt(k)`.
//!
//! * [`exactfloor`]: `floor(Sigma(n))` for arbitrarily large `n`, through the
//!   identity `floor(Sigma(n)) = floor(A(n))` with
//!   `A(x) = (2/3) sqrt(x+1) (1 + 1/(4x))`, decided in exact integers.
//! * [`asymptotic`]: `A`, the remainder bound functions, and certified
//!   enclosures of partial sums of square and general `r`-th roots.
//! * [`evaluator`]: a double-double summation oracle and a split evaluator
//!   that meets a requested tolerance with a guaranteed bound.
//! * [`verify`]: property sweeps used by the command line and the tests.
//! * [`cli`]: the `rootmean` command line.

pub mod asymptotic;
pub mod cli;
pub mod dd;
pub mod error;
pub mod evaluator;
pub mod exactfloor;
pub mod verify;

pub use asymptotic::{
    delta_bounds, eval_a, partial_sum_root_enclosure, partial_sum_sqrt_enclosure, sigma,
    DeltaBounds, Enclosure, RootOrder,
};
pub use error::{Error, Result};
pub use evaluator::{
    choose_nu, fast_mean, oracle_mean, oracle_sum_sqrt, CertifiedMean, EvalConfig, EvalPlan,
    Evaluator, FloorSource, Method,
};
pub use exactfloor::{floor_a_exact, floor_via_alpha, isqrt};
