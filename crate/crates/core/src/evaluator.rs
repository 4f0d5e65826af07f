//! Certified evaluation of `Sigma(n) = (1/n) sum_{k=1}^{n} sqrt(k)`.
//!
//! Two routes are provided:
//!
//! * the *oracle*, which adds the roots one by one in double-double
//!   arithmetic and carries a rigorous bound on the accumulated rounding;
//! * the *split* evaluator, which sums only the first `nu` roots and
//!   replaces the rest by the closed form
//!   `Sigma~(nu, n) = (1/n) (n A(n) + nu Sigma(nu) - nu A(nu))`, whose
//!   truncation error is below `n^(-3/2)/24 ((nu/n)^(-1/2) - 1)`.
//!
//! The oracle is what the split evaluator is tested against; the split
//! evaluator is what makes `n ~ 10^12` affordable.

use std::fmt;

use crate::asymptotic::{self, DeltaBounds, Enclosure, RootOrder, MAX_FLOAT_INDEX};
use crate::dd::{inflate, sum_up, two_prod, Dd, DD_OP_REL};
use crate::error::{Error, Result};
use crate::exactfloor;

pub const DEFAULT_ORACLE_CAP: u64 = 100_000_000;
pub const DEFAULT_NU_MIN: u64 = 16;
pub const DEFAULT_DIRECT_THRESHOLD: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalConfig {
    /// Longest range the oracle will sum.
    pub oracle_cap: u64,
    /// Smallest split point the planner will choose.
    pub nu_min: u64,
    /// Below this `n` the oracle is used directly.
    pub direct_threshold: u64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            oracle_cap: DEFAULT_ORACLE_CAP,
            nu_min: DEFAULT_NU_MIN,
            direct_threshold: DEFAULT_DIRECT_THRESHOLD,
        }
    }
}

/// A double-double value with a rigorous absolute error radius.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleValue {
    pub value: Dd,
    pub radius: f64,
}

impl OracleValue {
    /// Binary64 enclosure of the true value.
    pub fn enclosure(&self) -> Enclosure {
        let c = self.value.to_f64();
        let residual = (self.value - Dd::from(c)).to_f64().abs();
        Enclosure::widened(c, c, sum_up(&[self.radius, residual]))
    }

    /// The value divided by a positive integer.
    pub fn div_index(&self, n: u64) -> OracleValue {
        let nf = n as f64;
        let value = self.value.div_f64(nf);
        if self.radius == 0.0
            && value.lo == 0.0
            && two_prod(value.hi, nf) == (self.value.hi, self.value.lo)
        {
            return OracleValue { value, radius: 0.0 };
        }
        let radius = sum_up(&[self.radius / nf, DD_OP_REL * value.hi.abs()]);
        OracleValue { value, radius }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Direct,
    Split,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Direct => "direct",
            Method::Split => "split",
        })
    }
}

/// Which route decided a certified floor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FloorSource {
    Enclosure,
    Exact,
}

/// How a mean query will be answered.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalPlan {
    pub n: u64,
    /// Requested absolute tolerance on the mean.
    pub epsilon: f64,
    /// Split point; equal to `n` for direct plans.
    pub nu: u64,
    pub direct_threshold: u64,
    pub method: Method,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CertifiedMean {
    /// Binary64 result.
    pub value: f64,
    /// Correction such that `value + value_tail` is the double-double
    /// estimate the result was rounded from.
    pub value_tail: f64,
    /// `|Sigma(n) - value| <= error_bound`.
    pub error_bound: f64,
    pub method: Method,
    pub plan: EvalPlan,
}

impl CertifiedMean {
    pub fn enclosure(&self) -> Enclosure {
        Enclosure::widened(self.value, self.value, self.error_bound)
    }
}

/// Running double-double sum of `sqrt(k)` over consecutive `k`.
///
/// Each root is accurate to [`DD_OP_REL`] relative and each addition adds at
/// most [`DD_OP_REL`] times the running sum; all terms are positive, so the
/// final sum dominates every partial sum and the error is at most
/// `DD_OP_REL (terms + 1) S`. While every term is a perfect square the
/// sum is an exact integer and the radius is zero.
#[derive(Clone, Debug)]
pub struct SqrtAccumulator {
    sum: Dd,
    next: u64,
    terms: u64,
    inexact: bool,
}

impl SqrtAccumulator {
    pub fn starting_at(first: u64) -> Self {
        SqrtAccumulator {
            sum: Dd::ZERO,
            next: first,
            terms: 0,
            inexact: false,
        }
    }

    /// Adds `sqrt(next)` and returns the index just added.
    pub fn step(&mut self) -> u64 {
        let k = self.next;
        let root = Dd::from(k as f64).sqrt();
        self.inexact |= root.lo != 0.0 || root.hi * root.hi != k as f64;
        self.sum = self.sum + root;
        self.next += 1;
        self.terms += 1;
        k
    }

    pub fn current(&self) -> OracleValue {
        let radius = if self.inexact {
            inflate(DD_OP_REL * (self.terms + 1) as f64 * self.sum.hi.abs(), 4)
        } else {
            0.0
        };
        OracleValue {
            value: self.sum,
            radius,
        }
    }
}

fn check_oracle_range(nu: u64, n: u64, cap: u64) -> Result<()> {
    if nu == 0 {
        return Err(Error::ZeroIndex);
    }
    if n > MAX_FLOAT_INDEX {
        return Err(Error::BeyondFloat(n));
    }
    if nu > n {
        return Err(Error::EmptyRange { nu, n });
    }
    let len = n - nu + 1;
    if len > cap {
        return Err(Error::OracleCap { len, cap });
    }
    Ok(())
}

/// `sum_{k=nu}^{n} k^(1/r)` for integer `r >= 1`, by direct summation in
/// double-double.
pub fn oracle_sum_root(nu: u64, n: u64, r: u32, cap: u64) -> Result<OracleValue> {
    if r == 0 {
        return Err(Error::RootOrder(0.0));
    }
    check_oracle_range(nu, n, cap)?;
    let mut sum = Dd::ZERO;
    for k in nu..=n {
        sum = sum + Dd::from(k as f64).root(r);
    }
    let terms = (n - nu + 1) as f64;
    let rel = Dd::root_rel_error(r) + DD_OP_REL * terms;
    Ok(OracleValue {
        value: sum,
        radius: inflate(rel * sum.hi.abs(), 4),
    })
}

/// Prefix sums `P[k] = sum_{j=1}^{k} sqrt(j)` for `k <= max_n`, so that any
/// range sum is a single subtraction.
#[derive(Clone, Debug)]
pub struct PrefixOracle {
    prefix: Vec<OracleValue>,
}

impl PrefixOracle {
    pub fn new(max_n: u64, cap: u64) -> Result<Self> {
        check_oracle_range(1, max_n.max(1), cap)?;
        let mut prefix = Vec::with_capacity(max_n as usize + 1);
        prefix.push(OracleValue {
            value: Dd::ZERO,
            radius: 0.0,
        });
        let mut acc = SqrtAccumulator::starting_at(1);
        for _ in 0..max_n {
            acc.step();
            prefix.push(acc.current());
        }
        Ok(PrefixOracle { prefix })
    }

    pub fn max_n(&self) -> u64 {
        self.prefix.len() as u64 - 1
    }

    /// `sum_{k=nu}^{n} sqrt(k)`.
    pub fn range_sum(&self, nu: u64, n: u64) -> Result<OracleValue> {
        if nu == 0 {
            return Err(Error::ZeroIndex);
        }
        if nu > n {
            return Err(Error::EmptyRange { nu, n });
        }
        if n > self.max_n() {
            return Err(Error::OracleCap {
                len: n,
                cap: self.max_n(),
            });
        }
        let upper = self.prefix[n as usize];
        let lower = self.prefix[nu as usize - 1];
        let value = upper.value - lower.value;
        Ok(OracleValue {
            value,
            radius: sum_up(&[upper.radius, lower.radius, DD_OP_REL * value.hi.abs()]),
        })
    }

    pub fn mean(&self, n: u64) -> Result<OracleValue> {
        Ok(self.range_sum(1, n)?.div_index(n))
    }
}

/// `A(x)` in double-double, with relative error below `7 DD_OP_REL`.
pub(crate) fn a_dd(x: u64) -> Dd {
    let xf = x as f64;
    let root = Dd::from(xf + 1.0).sqrt();
    let factor = Dd::from(1.0) + Dd::from(1.0).div_f64(4.0 * xf);
    (root * factor).mul_f64(2.0).div_f64(3.0)
}

const A_DD_REL: f64 = 7.0 * DD_OP_REL;

/// `n^(-3/2)/24 ((nu/n)^(-1/2) - 1)`, rounded up.
///
/// `sqrt(n/nu) - 1` is formed as `((n - nu)/nu) / (sqrt(n/nu) + 1)` so that
/// every step has a small relative error.
pub fn split_error_bound(nu: u64, n: u64) -> f64 {
    let (nu_f, n_f) = (nu as f64, n as f64);
    let s = (n_f / nu_f).sqrt();
    let excess = ((n - nu) as f64 / nu_f) / (s + 1.0);
    inflate(excess / (n_f * n_f.sqrt()) / 24.0, 10)
}

/// Recovered remainder `delta` with its rigorous radius.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeltaRecovery {
    pub delta: f64,
    pub radius: f64,
}

impl DeltaRecovery {
    /// Strict containment in `bounds`, after accounting for the radius of
    /// the recovered value and the rounding of the bound functions.
    pub fn strictly_within(&self, bounds: &DeltaBounds, sigma_margin: f64) -> bool {
        let slack = sum_up(&[self.radius, sigma_margin]);
        bounds.lower + slack < self.delta && self.delta + slack < bounds.upper
    }
}

/// `delta_{nu,n} = 24 (n A(n) - (2/3) sqrt(nu) (nu - 3/4) - sum_{k=nu}^{n} sqrt(k))`.
pub fn recover_delta(nu: u64, n: u64, sum: &OracleValue) -> DeltaRecovery {
    let n_term = a_dd(n).mul_f64(n as f64);
    let nu_f = nu as f64;
    let nu_term = Dd::from(nu_f)
        .sqrt()
        .mul_f64(nu_f - 0.75)
        .mul_f64(2.0)
        .div_f64(3.0);
    let diff = n_term - nu_term - sum.value;
    let delta = diff.mul_f64(24.0);
    let scale = n_term.hi.abs().max(nu_term.hi.abs());
    let radius = 24.0
        * sum_up(&[
            sum.radius,
            (A_DD_REL + 2.0 * DD_OP_REL) * scale,
            6.0 * DD_OP_REL * scale,
            2.0 * DD_OP_REL * scale,
        ]);
    DeltaRecovery {
        delta: delta.to_f64(),
        radius: inflate(
            radius + (delta - Dd::from(delta.to_f64())).to_f64().abs(),
            2,
        ),
    }
}

/// Rounding margin for the binary64 bound functions `sigma(nu, n)` and
/// `sigma(nu + 2, n + 2)`.
pub fn sigma_margin(nu: u64) -> f64 {
    let scale = if nu == 1 {
        1.5
    } else {
        1.0 / ((nu - 1) as f64).sqrt()
    };
    asymptotic::rounding_margin(scale, 6)
}

#[derive(Clone, Debug, Default)]
pub struct Evaluator {
    pub config: EvalConfig,
}

impl Evaluator {
    pub fn new(config: EvalConfig) -> Self {
        Evaluator { config }
    }

    /// `sum_{k=nu}^{n} sqrt(k)` by compensated direct summation.
    pub fn oracle_sum_sqrt(&self, nu: u64, n: u64) -> Result<Enclosure> {
        Ok(self.oracle_sum_sqrt_dd(nu, n)?.enclosure())
    }

    pub fn oracle_sum_sqrt_dd(&self, nu: u64, n: u64) -> Result<OracleValue> {
        check_oracle_range(nu, n, self.config.oracle_cap)?;
        let mut acc = SqrtAccumulator::starting_at(nu);
        for _ in nu..=n {
            acc.step();
        }
        Ok(acc.current())
    }

    pub fn oracle_mean(&self, n: u64) -> Result<Enclosure> {
        Ok(self.oracle_mean_dd(n)?.enclosure())
    }

    pub fn oracle_mean_dd(&self, n: u64) -> Result<OracleValue> {
        Ok(self.oracle_sum_sqrt_dd(1, n)?.div_index(n))
    }

    fn direct_plan(&self, n: u64, epsilon: f64) -> EvalPlan {
        EvalPlan {
            n,
            epsilon,
            nu: n,
            direct_threshold: self.config.direct_threshold,
            method: Method::Direct,
        }
    }

    /// Picks the split point `nu = ceil(n (24 eps n^(3/2) + 1)^(-2))`, which
    /// makes the truncation bound at most `eps`.
    pub fn choose_nu(&self, n: u64, epsilon: f64) -> Result<EvalPlan> {
        check_tolerance(epsilon)?;
        self.plan_for_target(n, epsilon, epsilon)
    }

    fn plan_for_target(&self, n: u64, epsilon: f64, target: f64) -> Result<EvalPlan> {
        if n == 0 {
            return Err(Error::ZeroIndex);
        }
        if n > MAX_FLOAT_INDEX {
            return Err(Error::BeyondFloat(n));
        }
        if n < 3 || n < self.config.direct_threshold || target <= 0.0 {
            return Ok(self.direct_plan(n, epsilon));
        }
        let n_f = n as f64;
        let growth = 24.0 * target * n_f * n_f.sqrt() + 1.0;
        let formula = (n_f / (growth * growth)).ceil();
        if formula.is_nan() || formula > (n - 2) as f64 {
            return Ok(self.direct_plan(n, epsilon));
        }
        let mut nu = (formula as u64).max(1);
        // the formula is evaluated in binary64; step past any rounding shortfall
        while nu <= n - 2 && split_error_bound(nu, n) > target {
            nu += 1 + nu / 4096;
        }
        nu = nu.max(self.config.nu_min);
        if nu > n - 2 {
            return Ok(self.direct_plan(n, epsilon));
        }
        Ok(EvalPlan {
            n,
            epsilon,
            nu,
            direct_threshold: self.config.direct_threshold,
            method: Method::Split,
        })
    }

    /// `Sigma(n)` to within `epsilon`, certified.
    pub fn fast_mean(&self, n: u64, epsilon: f64) -> Result<CertifiedMean> {
        check_tolerance(epsilon)?;
        let mut target = epsilon;
        let mut best = f64::INFINITY;
        for _ in 0..4 {
            let plan = self.plan_for_target(n, epsilon, target)?;
            let result = match self.run_plan(plan) {
                Ok(result) => result,
                Err(Error::OracleCap { .. }) if best.is_finite() => break,
                Err(e) => return Err(e),
            };
            if result.error_bound <= epsilon {
                return Ok(result);
            }
            best = best.min(result.error_bound);
            if plan.method == Method::Direct {
                break;
            }
            // reserve the arithmetic margins and a full half-ulp for the final
            // rounding, whatever tail this particular estimate happened to get
            let overhead =
                result.error_bound - split_error_bound(plan.nu, n) - result.value_tail.abs()
                    + 0.5 * asymptotic::ulp(result.value);
            target = epsilon - 1.25 * overhead;
        }
        Err(Error::Unattainable { n, epsilon, best })
    }

    /// Split evaluation at a caller-chosen `nu` (`1 <= nu <= n - 2`); the
    /// plan's `epsilon` records the bound that was achieved.
    pub fn fast_mean_at(&self, n: u64, nu: u64) -> Result<CertifiedMean> {
        if n == 0 {
            return Err(Error::ZeroIndex);
        }
        if n > MAX_FLOAT_INDEX {
            return Err(Error::BeyondFloat(n));
        }
        if nu == 0 || n < 3 || nu > n - 2 {
            return Err(Error::SplitPoint { nu, n });
        }
        let plan = EvalPlan {
            n,
            epsilon: f64::INFINITY,
            nu,
            direct_threshold: self.config.direct_threshold,
            method: Method::Split,
        };
        let mut result = self.run_plan(plan)?;
        result.plan.epsilon = result.error_bound;
        Ok(result)
    }

    fn run_plan(&self, plan: EvalPlan) -> Result<CertifiedMean> {
        let (estimate, radius) = match plan.method {
            Method::Direct => {
                let mean = self.oracle_mean_dd(plan.n)?;
                (mean.value, mean.radius)
            }
            Method::Split => self.split_estimate(plan.nu, plan.n)?,
        };
        let value = estimate.to_f64();
        let tail = (estimate - Dd::from(value)).to_f64();
        Ok(CertifiedMean {
            value,
            value_tail: tail,
            error_bound: sum_up(&[radius, tail.abs()]),
            method: plan.method,
            plan,
        })
    }

    /// Double-double `Sigma~(nu, n)` and a bound on `|Sigma(n) - Sigma~|`.
    fn split_estimate(&self, nu: u64, n: u64) -> Result<(Dd, f64)> {
        let head = self.oracle_sum_sqrt_dd(1, nu)?;
        let a_n = a_dd(n);
        let nu_a_nu = a_dd(nu).mul_f64(nu as f64);
        let correction = (head.value - nu_a_nu).div_f64(n as f64);
        let estimate = a_n + correction;

        let n_f = n as f64;
        let scale = head.value.hi.max(nu_a_nu.hi);
        let arithmetic = sum_up(&[
            A_DD_REL * a_n.hi,
            (head.radius + (A_DD_REL + 3.0 * DD_OP_REL) * scale) / n_f,
            2.0 * DD_OP_REL * estimate.hi.abs(),
        ]);
        Ok((estimate, sum_up(&[split_error_bound(nu, n), arithmetic])))
    }

    /// `floor(Sigma(n))` from a certified mean at tolerance `epsilon`. If the
    /// enclosure contains an integer the floating result is not trusted and
    /// the exact integer method decides.
    pub fn certified_floor(&self, n: u64, epsilon: f64) -> Result<(u64, FloorSource)> {
        let mean = self.fast_mean(n, epsilon)?;
        match mean.enclosure().common_floor() {
            Some(f) => Ok((f as u64, FloorSource::Enclosure)),
            None => Ok((exactfloor::floor_a_u64(n)?, FloorSource::Exact)),
        }
    }

    /// `delta_{1,n}` recovered from `Sigma(n) = A(n) - 1/(6n) - delta/(24n)`
    /// via the oracle, with the bracket it must lie in.
    pub fn mean_decomposition_check(&self, n: u64) -> Result<(DeltaRecovery, DeltaBounds)> {
        if n < 2 {
            return Err(Error::EmptyRange { nu: 1, n });
        }
        let sum = self.oracle_sum_sqrt_dd(1, n)?;
        Ok((recover_delta(1, n, &sum), asymptotic::delta_bounds(1, n)?))
    }
}

fn check_tolerance(epsilon: f64) -> Result<()> {
    if epsilon.is_finite() && epsilon > 0.0 {
        Ok(())
    } else {
        Err(Error::Tolerance(epsilon))
    }
}

pub fn oracle_sum_sqrt(nu: u64, n: u64) -> Result<Enclosure> {
    Evaluator::default().oracle_sum_sqrt(nu, n)
}

pub fn oracle_mean(n: u64) -> Result<Enclosure> {
    Evaluator::default().oracle_mean(n)
}

pub fn choose_nu(n: u64, epsilon: f64) -> Result<EvalPlan> {
    Evaluator::default().choose_nu(n, epsilon)
}

pub fn fast_mean(n: u64, epsilon: f64) -> Result<CertifiedMean> {
    Evaluator::default().fast_mean(n, epsilon)
}

pub fn mean_decomposition_check(n: u64) -> Result<(DeltaRecovery, DeltaBounds)> {
    Evaluator::default().mean_decomposition_check(n)
}

/// Enclosure of `sum_{k=nu}^{n} k^(1/r)` from the oracle, for integer `r`.
pub fn oracle_sum_root_enclosure(nu: u64, n: u64, r: RootOrder) -> Result<Enclosure> {
    let rv = r.get();
    if rv.fract() != 0.0 || rv > f64::from(u32::MAX) {
        return Err(Error::RootOrder(rv));
    }
    Ok(oracle_sum_root(nu, n, rv as u32, DEFAULT_ORACLE_CAP)?.enclosure())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_small_sums() {
        let e = oracle_sum_sqrt(1, 1).unwrap();
        assert!(e.contains(1.0));
        assert!(e.width() < 1e-15);
        let e = oracle_sum_sqrt(1, 4).unwrap();
        assert!(e.contains(6.146_264_369_941_972));
        let e = oracle_sum_sqrt(1, 100).unwrap();
        assert!(e.contains(671.462_947_103_147_8));
        assert!(e.width() < 1e-12);
    }

    #[test]
    fn oracle_means() {
        assert!(oracle_mean(1).unwrap().contains(1.0));
        assert!(oracle_mean(3).unwrap().contains(1.382_088_123_313_990_8));
        let e = oracle_mean(8).unwrap();
        assert!(e.contains(2.038_250_065_754_465));
        assert_eq!(e.common_floor(), Some(2.0));
    }

    #[test]
    fn oracle_cap_enforced() {
        let ev = Evaluator::new(EvalConfig {
            oracle_cap: 10,
            ..EvalConfig::default()
        });
        assert_eq!(
            ev.oracle_sum_sqrt(1, 11),
            Err(Error::OracleCap { len: 11, cap: 10 })
        );
        assert!(ev.oracle_sum_sqrt(2, 11).is_ok());
    }

    #[test]
    fn prefix_matches_direct() {
        let prefix = PrefixOracle::new(2000, DEFAULT_ORACLE_CAP).unwrap();
        for (nu, n) in [(1, 1), (1, 2000), (17, 1999), (1000, 1001)] {
            let a = prefix.range_sum(nu, n).unwrap();
            let b = Evaluator::default().oracle_sum_sqrt_dd(nu, n).unwrap();
            let gap = (a.value - b.value).to_f64().abs();
            assert!(gap <= a.radius + b.radius, "({nu},{n}) gap {gap:e}");
        }
    }

    #[test]
    fn plan_examples() {
        let plan = choose_nu(10_000_000, 4.2e-10).unwrap();
        assert_eq!(plan.method, Method::Split);
        assert_eq!(plan.nu, 98);
        assert!(split_error_bound(98, 10_000_000) < 4.2e-10);
        assert!(split_error_bound(97, 10_000_000) > 4.2e-10);

        let plan = choose_nu(10_000_000, 1.0).unwrap();
        assert_eq!(plan.method, Method::Split);
        assert_eq!(plan.nu, DEFAULT_NU_MIN);

        let plan = choose_nu(10, 1e-15).unwrap();
        assert_eq!(plan.method, Method::Direct);

        assert_eq!(choose_nu(100, 0.0), Err(Error::Tolerance(0.0)));
        assert_eq!(choose_nu(100, -1.0), Err(Error::Tolerance(-1.0)));
    }

    #[test]
    fn split_plan_respects_gap_without_direct_threshold() {
        let ev = Evaluator::new(EvalConfig {
            direct_threshold: 0,
            nu_min: 1,
            ..EvalConfig::default()
        });
        for n in 3..200 {
            for eps in [1e-1, 1e-4, 1e-8, 1e-14] {
                let plan = ev.choose_nu(n, eps).unwrap();
                if plan.method == Method::Split {
                    assert!(plan.nu >= 1 && plan.nu <= n - 2, "n={n} eps={eps}");
                }
            }
        }
    }

    #[test]
    fn worked_example_bound() {
        let b = split_error_bound(100, 10_000_000);
        assert!((b - 4.153_490_51e-10).abs() < 1e-17);
    }

    #[test]
    fn direct_mean_of_five() {
        let m = fast_mean(5, 1e-12).unwrap();
        assert_eq!(m.method, Method::Direct);
        assert!((m.value - 1.676_466_469_488_352_4).abs() <= m.error_bound + 1e-16);
    }

    #[test]
    fn forced_split_point_validation() {
        let ev = Evaluator::default();
        assert_eq!(
            ev.fast_mean_at(100, 99),
            Err(Error::SplitPoint { nu: 99, n: 100 })
        );
        assert_eq!(
            ev.fast_mean_at(100, 0),
            Err(Error::SplitPoint { nu: 0, n: 100 })
        );
        assert!(ev.fast_mean_at(100, 98).is_ok());
    }

    #[test]
    fn decomposition_small() {
        for n in [2, 3, 10, 100] {
            let (rec, bounds) = mean_decomposition_check(n).unwrap();
            assert!(
                rec.strictly_within(&bounds, sigma_margin(1)),
                "n={n} {rec:?} {bounds:?}"
            );
        }
        let (rec, _) = mean_decomposition_check(100).unwrap();
        assert!((rec.delta - 0.889_765_802_361_899).abs() < 1e-12);
        let (rec, _) = mean_decomposition_check(2).unwrap();
        assert!((rec.delta - 0.412_703_575_525_301_4).abs() < 1e-14);
        assert!(mean_decomposition_check(1).is_err());
    }

    #[test]
    fn certified_floor_matches_exact() {
        let ev = Evaluator::default();
        for n in [1, 7, 8, 18, 19, 20_000, 123_456, 10_000_000] {
            let (f, _) = ev.certified_floor(n, 1e-6).unwrap();
            assert_eq!(f, exactfloor::floor_a_u64(n).unwrap(), "n={n}");
        }
        // n = 1 has Sigma(1) = 1 exactly; the oracle is exact there
        assert_eq!(
            ev.certified_floor(1, 1e-6).unwrap(),
            (1, FloorSource::Enclosure)
        );
    }

    #[test]
    fn cube_root_oracle() {
        let e = oracle_sum_root_enclosure(1, 1000, RootOrder::new(3.0).unwrap()).unwrap();
        assert!(e.contains(7_504.722_934_729_932));
        assert!(oracle_sum_root_enclosure(1, 10, RootOrder::new(2.5).unwrap()).is_err());
    }
}
