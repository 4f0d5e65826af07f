//! Property sweeps over the integer-part identity, the remainder bracket
//! and the bounds on `A`. Each sweep counts checks and keeps the first
//! counterexample.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::asymptotic::{self, Enclosure};
use crate::error::{Error, Result};
use crate::evaluator::{recover_delta, sigma_margin, PrefixOracle, SqrtAccumulator};
use crate::exactfloor;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub at: String,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepReport {
    pub checked: u64,
    pub failed: u64,
    pub first_failure: Option<Counterexample>,
}

impl SweepReport {
    pub fn passed(&self) -> u64 {
        self.checked - self.failed
    }

    pub fn is_clean(&self) -> bool {
        self.failed == 0
    }

    fn record(&mut self, ok: bool, failure: impl FnOnce() -> Counterexample) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(failure());
            }
        }
    }
}

/// For every `n` in `1..=max_n`, the exact `floor(A(n))` against the floor of
/// the oracle mean. An oracle enclosure that straddles an integer counts as
/// a failure: it would mean the oracle cannot decide.
pub fn theorem1_sweep(max_n: u64, oracle_cap: u64) -> Result<SweepReport> {
    if max_n > oracle_cap {
        return Err(Error::OracleCap {
            len: max_n,
            cap: oracle_cap,
        });
    }
    if max_n > asymptotic::MAX_FLOAT_INDEX {
        return Err(Error::BeyondFloat(max_n));
    }
    let mut report = SweepReport::default();
    let mut acc = SqrtAccumulator::starting_at(1);
    for _ in 0..max_n {
        let n = acc.step();
        let mean = acc.current().div_index(n).enclosure();
        let exact = exactfloor::floor_a_u64(n)?;
        let oracle = mean.common_floor();
        report.record(oracle == Some(exact as f64), || Counterexample {
            at: format!("n={n}"),
            expected: exact.to_string(),
            got: match oracle {
                Some(f) => format!("{f}"),
                None => format!("undecided [{}, {}]", mean.lo, mean.hi),
            },
        });
    }
    Ok(report)
}

/// Remainder containment `sigma(nu+2, n+2) < delta_{nu,n} < sigma(nu, n)` for
/// `samples` random pairs `1 <= nu < n <= max_n`, and `delta_{1,n} < 3/2` for
/// each sampled `n`.
pub fn delta_sweep(max_n: u64, samples: u64, seed: u64, oracle_cap: u64) -> Result<SweepReport> {
    let mut report = SweepReport::default();
    if max_n < 2 {
        return Ok(report);
    }
    let oracle = PrefixOracle::new(max_n, oracle_cap)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let n = rng.gen_range(2..=max_n);
        let nu = rng.gen_range(1..n);

        let sum = oracle.range_sum(nu, n)?;
        let rec = recover_delta(nu, n, &sum);
        let bounds = asymptotic::delta_bounds(nu, n)?;
        report.record(rec.strictly_within(&bounds, sigma_margin(nu)), || {
            Counterexample {
                at: format!("nu={nu} n={n}"),
                expected: format!("({}, {})", bounds.lower, bounds.upper),
                got: format!("{} +- {:e}", rec.delta, rec.radius),
            }
        });

        let whole = oracle.range_sum(1, n)?;
        let rec = recover_delta(1, n, &whole);
        report.record(rec.delta + rec.radius < 1.5, || Counterexample {
            at: format!("nu=1 n={n}"),
            expected: "< 1.5".to_string(),
            got: format!("{} +- {:e}", rec.delta, rec.radius),
        });
    }
    Ok(report)
}

/// `points` log-spaced abscissae from 2 to `max_x`, endpoints included.
pub fn log_grid(max_x: f64, points: u64) -> Vec<f64> {
    let (a, b) = (2f64.ln(), max_x.max(2.0).ln());
    let steps = points.max(2) - 1;
    let mut grid: Vec<f64> = (0..=steps)
        .map(|i| {
            (a + (b - a) * i as f64 / steps as f64)
                .exp()
                .clamp(2.0, max_x.max(2.0))
        })
        .collect();
    grid[0] = 2.0;
    grid[steps as usize] = max_x.max(2.0);
    grid
}

/// `lower(x) < A(x) < upper(x)` on a log grid; the lower bound only from
/// `x = 6` on. All three sides carry rounding margins.
pub fn lemma2_sweep(max_x: f64, points: u64) -> Result<SweepReport> {
    let mut report = SweepReport::default();
    for x in log_grid(max_x, points) {
        let a = asymptotic::eval_a_enclosure(x)?;
        let upper = asymptotic::lemma2_upper_enclosure(x)?;
        report.record(a.hi < upper.lo, || Counterexample {
            at: format!("x={x}"),
            expected: format!("A(x) < {}", upper.lo),
            got: format!("A(x) <= {}", a.hi),
        });
        if x >= 6.0 {
            let lower = asymptotic::lemma2_lower_enclosure(x)?;
            report.record(lower.hi < a.lo, || Counterexample {
                at: format!("x={x}"),
                expected: format!("A(x) > {}", lower.hi),
                got: format!("A(x) >= {}", a.lo),
            });
        }
    }
    Ok(report)
}

/// For `1 <= m <= max_m`: `A(n) < m + 1` at `n = floor(alpha(m))` and
/// `A(n) - 1/(4n) > m + 1` at `n = floor(alpha(m)) + 1`, both in binary64
/// with margins and exactly in integers.
pub fn lemma3_sweep(max_m: u64) -> Result<SweepReport> {
    let mut report = SweepReport::default();
    for m in 1..=max_m {
        let target = (m + 1) as f64;
        let below = u64::try_from(exactfloor::alpha_floor(m)).expect("alpha fits in u64");
        let above = below + 1;

        let a_below = asymptotic::eval_a_enclosure(below as f64)?;
        report.record(a_below.hi < target, || Counterexample {
            at: format!("m={m} n={below}"),
            expected: format!("A(n) < {target}"),
            got: format!("A(n) <= {}", a_below.hi),
        });

        let shifted = asymptotic::eval_a(above as f64)? - 1.0 / (4.0 * above as f64);
        let shifted = Enclosure::around(shifted, 10);
        report.record(shifted.lo > target, || Counterexample {
            at: format!("m={m} n={above}"),
            expected: format!("A(n) - 1/(4n) > {target}"),
            got: format!("A(n) - 1/(4n) >= {}", shifted.lo),
        });

        report.record(exactfloor::threshold_inequalities_hold(m), || {
            Counterexample {
                at: format!("m={m}"),
                expected: "exact threshold inequalities".to_string(),
                got: "violated".to_string(),
            }
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints() {
        let g = log_grid(1e12, 5);
        assert_eq!(g.len(), 5);
        assert_eq!(g[0], 2.0);
        assert_eq!(*g.last().unwrap(), 1e12);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn small_sweeps_are_clean() {
        assert!(theorem1_sweep(3000, u64::MAX).unwrap().is_clean());
        assert!(delta_sweep(500, 200, 7, u64::MAX).unwrap().is_clean());
        assert!(lemma2_sweep(1e6, 500).unwrap().is_clean());
        assert!(lemma3_sweep(100).unwrap().is_clean());
    }

    #[test]
    fn theorem1_respects_cap() {
        assert!(theorem1_sweep(100, 10).is_err());
    }
}
