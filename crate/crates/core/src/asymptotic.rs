//! Closed-form asymptotics for sums of roots, evaluated in binary64.
//!
//! With `A(x) = (2/3) sqrt(x+1) (1 + 1/(4x))`, the partial sums of square
//! roots satisfy
//!
//! ```text
//! sum_{k=nu}^{n} sqrt(k) = n A(n) - (2/3) sqrt(nu) (nu - 3/4) - delta / 24
//! ```
//!
//! with `sigma(nu+2, n+2) < delta < sigma(nu, n)`. The same trapezium-rule
//! argument gives a bracket for general `r`-th roots.
//!
//! Every enclosure returned here is widened outward by a rounding margin of
//! `4 ulp(scale)` per floating operation, where `scale` is the largest
//! magnitude entering the expression, so that rounding cannot break
//! containment even when the two main terms nearly cancel.

use crate::error::{Error, Result};

/// Largest index accepted by the floating-point paths.
pub const MAX_FLOAT_INDEX: u64 = 1 << 53;

const TWO_THIRDS: f64 = 2.0 / 3.0;

/// Closed interval `[lo, hi]` guaranteed to contain some true real value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Enclosure {
    pub lo: f64,
    pub hi: f64,
}

impl Enclosure {
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "inverted enclosure [{lo}, {hi}]");
        Enclosure { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Enclosure { lo: x, hi: x }
    }

    /// `value` widened by the rounding margin of `ops` operations.
    pub fn around(value: f64, ops: u32) -> Self {
        let eta = rounding_margin(value, ops);
        Enclosure::new((value - eta).next_down(), (value + eta).next_up())
    }

    /// `[lo - eta, hi + eta]`, rounded outward.
    pub fn widened(lo: f64, hi: f64, eta: f64) -> Self {
        if eta == 0.0 {
            return Enclosure::new(lo, hi);
        }
        Enclosure::new((lo - eta).next_down(), (hi + eta).next_up())
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        self.lo + (self.hi - self.lo) / 2.0
    }

    /// Upper bound on the distance from [`Enclosure::midpoint`] to any point
    /// of the interval.
    pub fn half_width(&self) -> f64 {
        let mid = self.midpoint();
        (mid - self.lo).max(self.hi - mid).next_up()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_strictly(&self, x: f64) -> bool {
        self.lo < x && x < self.hi
    }

    /// `floor` of every point in the interval, if they all agree.
    pub fn common_floor(&self) -> Option<f64> {
        let f = self.lo.floor();
        (f == self.hi.floor()).then_some(f)
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }
}

/// Bracket `(lower, upper)` for the trapezium remainder `delta`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeltaBounds {
    pub lower: f64,
    pub upper: f64,
}

impl DeltaBounds {
    pub fn contains_strictly(&self, delta: f64) -> bool {
        self.lower < delta && delta < self.upper
    }
}

/// Root index `r >= 1`; `r = 2` is the square root, `r = 1` is the identity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootOrder(f64);

impl RootOrder {
    pub const LINEAR: RootOrder = RootOrder(1.0);
    pub const SQRT: RootOrder = RootOrder(2.0);

    pub fn new(r: f64) -> Result<Self> {
        if r.is_finite() && r >= 1.0 {
            Ok(RootOrder(r))
        } else {
            Err(Error::RootOrder(r))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    /// `x^(1/r)` and the number of rounding steps to charge for it.
    fn root(self, x: f64) -> (f64, u32) {
        match self.0 {
            2.0 => (x.sqrt(), 1),
            3.0 => (x.cbrt(), 2),
            r => (x.powf(1.0 / r), power_ops(x, r)),
        }
    }

    /// `x^(-(1 - 1/r))` and its operation count.
    fn decay(self, x: f64) -> (f64, u32) {
        match self.0 {
            2.0 => (1.0 / x.sqrt(), 2),
            r => (x.powf(1.0 / r - 1.0), power_ops(x, r) + 1),
        }
    }
}

/// `powf` with an exponent that is itself rounded: the relative error in
/// the exponent is amplified by `ln x`.
fn power_ops(x: f64, r: f64) -> u32 {
    3 + (x.ln().abs() / r).ceil() as u32
}

/// Unit in the last place of `|x|`.
pub fn ulp(x: f64) -> f64 {
    let a = x.abs();
    a.next_up() - a
}

/// `4 ulp(scale)` per floating operation.
pub fn rounding_margin(scale: f64, ops: u32) -> f64 {
    4.0 * ulp(scale) * f64::from(ops)
}

fn check_float_index(n: u64) -> Result<f64> {
    match n {
        0 => Err(Error::ZeroIndex),
        n if n > MAX_FLOAT_INDEX => Err(Error::BeyondFloat(n)),
        n => Ok(n as f64),
    }
}

fn check_range(nu: u64, n: u64) -> Result<(f64, f64)> {
    let nu_f = check_float_index(nu)?;
    let n_f = check_float_index(n)?;
    if nu >= n {
        return Err(Error::EmptyRange { nu, n });
    }
    Ok((nu_f, n_f))
}

fn check_domain(what: &'static str, x: f64, min: f64) -> Result<()> {
    if x.is_finite() && x >= min {
        Ok(())
    } else {
        Err(Error::Domain { what, x, min })
    }
}

/// `A(x) = (2/3) sqrt(x + 1) (1 + 1/(4x))` for `x >= 1`.
pub fn eval_a(x: f64) -> Result<f64> {
    check_domain("A", x, 1.0)?;
    Ok(TWO_THIRDS * (x + 1.0).sqrt() * (1.0 + 1.0 / (4.0 * x)))
}

/// [`eval_a`] with its rounding margin.
pub fn eval_a_enclosure(x: f64) -> Result<Enclosure> {
    Ok(Enclosure::around(eval_a(x)?, 7))
}

/// `(2/3) sqrt(x + 2)`, an upper bound for `A(x)` when `x >= 2`.
pub fn lemma2_upper(x: f64) -> Result<f64> {
    check_domain("the upper bound of A", x, 2.0)?;
    Ok(TWO_THIRDS * (x + 2.0).sqrt())
}

pub fn lemma2_upper_enclosure(x: f64) -> Result<Enclosure> {
    Ok(Enclosure::around(lemma2_upper(x)?, 4))
}

/// `(2/3) sqrt(x + 5/4) + 1/(4x)`, a lower bound for `A(x)` when `x >= 6`.
pub fn lemma2_lower(x: f64) -> Result<f64> {
    check_domain("the lower bound of A", x, 6.0)?;
    Ok(TWO_THIRDS * (x + 1.25).sqrt() + 1.0 / (4.0 * x))
}

pub fn lemma2_lower_enclosure(x: f64) -> Result<Enclosure> {
    Ok(Enclosure::around(lemma2_lower(x)?, 6))
}

/// `sigma(nu, n)`: `3/2 - n^(-1/2)` for `nu = 1`, else
/// `(nu - 1)^(-1/2) - n^(-1/2)`.
pub fn sigma(nu: u64, n: u64) -> Result<f64> {
    check_float_index(nu)?;
    let n_f = check_float_index(n)?;
    let tail = 1.0 / n_f.sqrt();
    Ok(if nu == 1 {
        1.5 - tail
    } else {
        1.0 / ((nu - 1) as f64).sqrt() - tail
    })
}

/// `sigma_r(nu, n)`: `2 - 1/r - n^(-1+1/r)` for `nu = 1`, else
/// `(nu-1)^(-1+1/r) - n^(-1+1/r)`. Identically zero for `r = 1`.
pub fn sigma_root(nu: u64, n: u64, r: RootOrder) -> Result<f64> {
    check_float_index(nu)?;
    let n_f = check_float_index(n)?;
    if r == RootOrder::LINEAR {
        return Ok(0.0);
    }
    let (tail, _) = r.decay(n_f);
    Ok(if nu == 1 {
        (2.0 - 1.0 / r.get()) - tail
    } else {
        r.decay((nu - 1) as f64).0 - tail
    })
}

/// `(sigma(nu+2, n+2), sigma(nu, n))`, the bracket for `delta_{nu,n}`.
pub fn delta_bounds(nu: u64, n: u64) -> Result<DeltaBounds> {
    check_range(nu, n)?;
    Ok(DeltaBounds {
        lower: sigma(nu + 2, n + 2)?,
        upper: sigma(nu, n)?,
    })
}

/// The `r`-th root analogue of [`delta_bounds`].
pub fn delta_bounds_root(nu: u64, n: u64, r: RootOrder) -> Result<DeltaBounds> {
    check_range(nu, n)?;
    Ok(DeltaBounds {
        lower: sigma_root(nu + 2, n + 2, r)?,
        upper: sigma_root(nu, n, r)?,
    })
}

/// Unwidened endpoints of a partial-sum bracket together with the margin
/// that must be added on each side.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct RawBracket {
    pub lo: f64,
    pub hi: f64,
    pub margin: f64,
}

impl RawBracket {
    fn enclosure(self) -> Enclosure {
        Enclosure::widened(self.lo, self.hi, self.margin)
    }
}

/// Assembles `M - delta/divisor` from the two main terms of the closed
/// form, each carrying `term_ops` roundings, and the delta bracket computed
/// with `sigma_ops` roundings.
fn bracket_from_terms(
    upper_term: f64,
    lower_term: f64,
    term_ops: u32,
    bounds: DeltaBounds,
    sigma_ops: u32,
    divisor: f64,
) -> RawBracket {
    let main = upper_term - lower_term;
    let scale = upper_term.abs().max(lower_term.abs());
    let lo = main - bounds.upper / divisor;
    let hi = main - bounds.lower / divisor;
    let margin = rounding_margin(scale, 2 * term_ops + 1)
        + rounding_margin(2.0, sigma_ops)
        + rounding_margin(lo.abs().max(hi.abs()), 1);
    RawBracket { lo, hi, margin }
}

pub(crate) fn sqrt_sum_bracket(nu: u64, n: u64) -> Result<RawBracket> {
    let (nu_f, n_f) = check_range(nu, n)?;
    let upper_term = TWO_THIRDS * (n_f + 1.0).sqrt() * (n_f + 0.25);
    let lower_term = TWO_THIRDS * nu_f.sqrt() * (nu_f - 0.75);
    let bounds = delta_bounds(nu, n)?;
    Ok(bracket_from_terms(
        upper_term, lower_term, 7, bounds, 7, 24.0,
    ))
}

/// Enclosure of `sum_{k=nu}^{n} sqrt(k)` for `1 <= nu < n`.
pub fn partial_sum_sqrt_enclosure(nu: u64, n: u64) -> Result<Enclosure> {
    Ok(sqrt_sum_bracket(nu, n)?.enclosure())
}

pub(crate) fn root_sum_bracket(nu: u64, n: u64, r: RootOrder) -> Result<RawBracket> {
    let (nu_f, n_f) = check_range(nu, n)?;
    let rv = r.get();
    let c = rv / (rv + 1.0);
    let shift_n = (1.0 - 1.0 / rv) / 2.0;
    let shift_nu = (1.0 + 1.0 / rv) / 2.0;
    let (root_n, root_n_ops) = r.root(n_f + 1.0);
    let (root_nu, root_nu_ops) = r.root(nu_f);
    let upper_term = c * root_n * (n_f + shift_n);
    let lower_term = c * root_nu * (nu_f - shift_nu);
    let term_ops = 6 + root_n_ops.max(root_nu_ops);

    let bounds = delta_bounds_root(nu, n, r)?;
    let decay_ops = r.decay(n_f + 2.0).1.max(r.decay(nu_f).1);
    let sigma_ops = 2 * decay_ops + 3;
    Ok(bracket_from_terms(
        upper_term,
        lower_term,
        term_ops,
        bounds,
        sigma_ops,
        12.0 * rv,
    ))
}

/// Enclosure of `sum_{k=nu}^{n} k^(1/r)` for `1 <= nu < n` and real `r >= 1`.
///
/// For `r = 1` the sum is the arithmetic series, returned exactly (as a
/// zero-width interval whenever it is representable).
pub fn partial_sum_root_enclosure(nu: u64, n: u64, r: RootOrder) -> Result<Enclosure> {
    if r == RootOrder::LINEAR {
        check_range(nu, n)?;
        let (nu, n) = (u128::from(nu), u128::from(n));
        let exact = (n * (n + 1) - nu * (nu - 1)) / 2;
        let v = exact as f64;
        return Ok(if v as u128 == exact {
            Enclosure::point(v)
        } else {
            Enclosure::new(v.next_down(), v.next_up())
        });
    }
    Ok(root_sum_bracket(nu, n, r)?.enclosure())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn a_at_small_points() {
        assert!(close(eval_a(2.0).unwrap(), 3.0 * 3f64.sqrt() / 4.0, 1e-15));
        assert!(close(eval_a(1.0).unwrap(), 5.0 / 6.0 * 2f64.sqrt(), 1e-15));
        assert_eq!(eval_a(8.0).unwrap(), 2.0625);
        assert!(close(eval_a(1e7).unwrap(), 2108.1852648928025, 1e-9));
        assert!(close(eval_a(6.0).unwrap(), 1.8373272993504101, 1e-15));
    }

    #[test]
    fn a_domain() {
        assert!(matches!(eval_a(0.5), Err(Error::Domain { .. })));
        assert!(eval_a(f64::NAN).is_err());
        assert!(lemma2_upper(1.9).is_err());
        assert!(lemma2_lower(5.9).is_err());
    }

    #[test]
    fn sigma_values() {
        assert!(close(sigma(1, 100).unwrap(), 1.4, 1e-15));
        assert!(close(sigma(2, 100).unwrap(), 0.9, 1e-15));
        assert!(close(
            sigma(101, 10_000_000).unwrap(),
            0.1 - 10f64.powf(-3.5),
            1e-15
        ));
        assert_eq!(sigma(0, 5), Err(Error::ZeroIndex));
    }

    #[test]
    fn delta_bound_values() {
        let b = delta_bounds(1, 100).unwrap();
        assert!(close(b.lower, 0.5f64.sqrt() - 1.0 / 102f64.sqrt(), 1e-15));
        assert!(close(b.lower, 0.60809, 1e-5));
        assert!(close(b.upper, 1.4, 1e-15));
        let b = delta_bounds(2, 10).unwrap();
        assert!(close(b.lower, 0.28868, 1e-5));
        assert!(close(b.upper, 0.68377, 1e-5));
        assert_eq!(delta_bounds(5, 5), Err(Error::EmptyRange { nu: 5, n: 5 }));
    }

    #[test]
    fn sqrt_sum_small_cases() {
        // 50-digit reference values
        let e = partial_sum_sqrt_enclosure(1, 100).unwrap();
        assert!(e.contains_strictly(671.462_947_103_147_8));
        let e = partial_sum_sqrt_enclosure(2, 3).unwrap();
        assert!(e.contains_strictly(3.146_264_369_941_972));
    }

    #[test]
    fn raw_width_matches_delta_bracket() {
        let raw = sqrt_sum_bracket(100, 10_000_000).unwrap();
        let b = delta_bounds(100, 10_000_000).unwrap();
        let bracket_width = (b.upper - b.lower) / 24.0;
        assert!(close(raw.hi - raw.lo, bracket_width, 1e-5));
        assert!(raw.hi - raw.lo <= sigma(100, 10_000_000).unwrap() / 24.0);
    }

    #[test]
    fn linear_root_is_exact() {
        let e = partial_sum_root_enclosure(3, 10, RootOrder::LINEAR).unwrap();
        assert_eq!(e, Enclosure::point(52.0));
        assert_eq!(sigma_root(1, 10, RootOrder::LINEAR).unwrap(), 0.0);
    }

    #[test]
    fn square_root_order_matches_sqrt_path() {
        for (nu, n) in [(1, 2), (1, 100), (2, 3), (57, 9_999), (1_000, 1_000_000)] {
            assert_eq!(
                partial_sum_root_enclosure(nu, n, RootOrder::SQRT).unwrap(),
                partial_sum_sqrt_enclosure(nu, n).unwrap()
            );
        }
    }

    #[test]
    fn cube_root_sum() {
        let e = partial_sum_root_enclosure(1, 1000, RootOrder::new(3.0).unwrap()).unwrap();
        assert!(e.contains_strictly(7_504.722_934_729_932));
    }

    #[test]
    fn root_order_validation() {
        assert!(RootOrder::new(0.5).is_err());
        assert!(RootOrder::new(f64::INFINITY).is_err());
        assert!(partial_sum_root_enclosure(1, 10, RootOrder::new(2.5).unwrap()).is_ok());
    }

    #[test]
    fn beyond_float_range() {
        assert_eq!(
            partial_sum_sqrt_enclosure(1, MAX_FLOAT_INDEX + 1),
            Err(Error::BeyondFloat(MAX_FLOAT_INDEX + 1))
        );
    }

    #[test]
    fn lemma2_examples() {
        assert!(close(lemma2_upper(2.0).unwrap(), 4.0 / 3.0, 1e-15));
        assert!(eval_a(2.0).unwrap() < lemma2_upper(2.0).unwrap());
        let lower6 = lemma2_lower(6.0).unwrap();
        assert!(close(lower6, 1.836_721_602_378_168, 1e-14));
        assert!(lower6 < eval_a(6.0).unwrap());
        assert!(close(lemma2_upper(1e6).unwrap(), 666.667_333_333, 1e-9));
        assert!(eval_a(1e6).unwrap() < lemma2_upper(1e6).unwrap());
    }

    #[test]
    fn enclosure_floor() {
        assert_eq!(Enclosure::new(2.1, 2.9).common_floor(), Some(2.0));
        assert_eq!(Enclosure::new(1.9, 2.1).common_floor(), None);
    }
}
