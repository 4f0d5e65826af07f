//! Exact integer part of `A(n) = (4n + 1) sqrt(n + 1) / (6n)`.
//!
//! Since `floor(Sigma(n)) == floor(A(n))` for every `n >= 1`, this module
//! answers integer-part queries for arbitrarily large `n` without any
//! floating-point arithmetic. Near a step `n ~ alpha(m)` the distance from
//! `A(n)` to the next integer shrinks like `n^(-1/2)`, which is below one ulp
//! of binary64 once `n` is around `10^15`, so every comparison here is an
//! integer comparison obtained by squaring.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `floor(sqrt(k))`, by Newton iteration from an over-estimate.
///
/// Starting above the root, the integer Newton sequence decreases strictly
/// until it reaches `floor(sqrt(k))`, after which the next iterate is not
/// smaller; that is the stopping test.
pub fn isqrt(k: &BigUint) -> BigUint {
    if k.is_zero() {
        return BigUint::zero();
    }
    let mut x = BigUint::one() << k.bits().div_ceil(2);
    loop {
        let y = (&x + k / &x) >> 1u32;
        if y >= x {
            break;
        }
        x = y;
    }
    debug_assert!(&x * &x <= *k && (&x + 1u32) * (&x + 1u32) > *k);
    x
}

fn positive(n: impl Into<BigUint>) -> Result<BigUint> {
    let n = n.into();
    if n.is_zero() {
        Err(Error::ZeroIndex)
    } else {
        Ok(n)
    }
}

/// Numerator and denominator of `A(n)^2 = (4n+1)^2 (n+1) / (36 n^2)`.
fn a_squared_parts(n: &BigUint) -> (BigUint, BigUint) {
    let four_n_plus_one: BigUint = (n << 2u32) + 1u32;
    let num = &four_n_plus_one * &four_n_plus_one * (n + 1u32);
    let den = n * n * 36u32;
    (num, den)
}

/// `floor(A(n))`, and therefore `floor(Sigma(n))`.
///
/// `m <= A(n)` iff `m^2 <= A(n)^2`, and for integer `m` that is
/// `m^2 <= floor(A(n)^2)`, so the answer is `isqrt(floor(A(n)^2))`.
pub fn floor_a_exact(n: impl Into<BigUint>) -> Result<BigUint> {
    let n = positive(n)?;
    let (num, den) = a_squared_parts(&n);
    Ok(isqrt(&(num / den)))
}

/// `u64` convenience wrapper around [`floor_a_exact`].
pub fn floor_a_u64(n: u64) -> Result<u64> {
    let m = floor_a_exact(n)?;
    // A(n) < sqrt(n) for n >= 2, so the result always fits.
    Ok(u64::try_from(m).expect("floor(A(n)) fits in u64 for u64 n"))
}

/// Checks `36 n^2 m^2 <= (4n+1)^2 (n+1) < 36 n^2 (m+1)^2`, i.e.
/// `m <= A(n) < m + 1`, entirely in integers.
pub fn brackets_a(n: &BigUint, m: &BigUint) -> bool {
    let (num, den) = a_squared_parts(n);
    let m1 = m + 1u32;
    &den * m * m <= num && num < &den * &m1 * &m1
}

/// Step threshold `alpha(m) = 9/4 (m+1)^2 - 2`, held as `4 alpha(m)` so that
/// it stays integral (it is a quarter-integer for even `m`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaThreshold {
    pub m: BigUint,
    pub alpha_times_4: BigUint,
}

impl AlphaThreshold {
    pub fn new(m: impl Into<BigUint>) -> Self {
        let m = m.into();
        let m1 = &m + 1u32;
        let alpha_times_4 = &m1 * &m1 * 9u32 - 8u32;
        AlphaThreshold { m, alpha_times_4 }
    }

    /// `n <= alpha(m)`, decided as `4n <= 4 alpha(m)`.
    pub fn admits(&self, n: &BigUint) -> bool {
        (n << 2u32) <= self.alpha_times_4
    }

    /// `floor(alpha(m))`: the last `n` with `floor(A(n)) <= m`.
    pub fn floor(&self) -> BigUint {
        &self.alpha_times_4 >> 2u32
    }
}

/// `floor(alpha(m)) = floor((9 (m+1)^2 - 8) / 4)`.
pub fn alpha_floor(m: impl Into<BigUint>) -> BigUint {
    AlphaThreshold::new(m).floor()
}

/// `floor(A(n))` as the smallest `k >= 1` with `n <= alpha(k)`.
///
/// `4n <= 9 (k+1)^2 - 8` iff `(k+1)^2 >= t` with `t = ceil((4n + 8) / 9)`,
/// so `k + 1` is the integer ceiling square root of `t`. The result is then
/// nudged until it satisfies the defining inequalities exactly.
pub fn floor_via_alpha(n: impl Into<BigUint>) -> Result<BigUint> {
    let n = positive(n)?;
    let t: BigUint = ((&n << 2u32) + 16u32) / 9u32;
    let ceil_root = isqrt(&(&t - 1u32)) + 1u32;
    let one = BigUint::one();
    let mut k = if ceil_root > one {
        ceil_root - 1u32
    } else {
        one.clone()
    };
    while !AlphaThreshold::new(k.clone()).admits(&n) {
        k += 1u32;
    }
    while k > one && AlphaThreshold::new(&k - 1u32).admits(&n) {
        k -= 1u32;
    }
    Ok(k)
}

/// Both threshold inequalities for a given `m >= 1`, decided exactly:
///
/// * at `n = floor(alpha(m))`: `A(n) < m + 1`, i.e. `(4n+1)^2 (n+1) < 36 n^2 (m+1)^2`;
/// * at `n = floor(alpha(m)) + 1`: `A(n) - 1/(4n) > m + 1`, i.e.
///   `4 (4n+1)^2 (n+1) > (12 n (m+1) + 3)^2`.
pub fn threshold_inequalities_hold(m: u64) -> bool {
    if m == 0 {
        return false;
    }
    let alpha = AlphaThreshold::new(m);
    let m1 = BigUint::from(m) + 1u32;

    let below = alpha.floor();
    let (num, den) = a_squared_parts(&below);
    let below_ok = num < den * &m1 * &m1;

    let above = alpha.floor() + 1u32;
    let (num, _) = a_squared_parts(&above);
    let rhs: BigUint = &above * &m1 * 12u32 + 3u32;
    let above_ok = num * 4u32 > &rhs * &rhs;

    below_ok && above_ok
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn isqrt_small_values() {
        assert_eq!(isqrt(&big(0)), big(0));
        assert_eq!(isqrt(&big(1)), big(1));
        assert_eq!(isqrt(&big(2)), big(1));
        assert_eq!(isqrt(&big(3)), big(1));
        assert_eq!(isqrt(&big(4)), big(2));
        assert_eq!(isqrt(&big(1_000_000_000_000_000_000)), big(1_000_000_000));
    }

    #[test]
    fn isqrt_around_squares() {
        for r in (1u64..2000).chain([u32::MAX as u64 - 3, u32::MAX as u64]) {
            let sq = big(r) * big(r);
            assert_eq!(isqrt(&sq), big(r));
            assert_eq!(isqrt(&(&sq - 1u32)), big(r - 1));
            assert_eq!(isqrt(&(&sq + 1u32)), big(r));
        }
    }

    #[test]
    fn floor_small_cases() {
        assert_eq!(floor_a_u64(1).unwrap(), 1);
        assert_eq!(floor_a_u64(7).unwrap(), 1);
        assert_eq!(floor_a_u64(8).unwrap(), 2);
        assert_eq!(floor_a_u64(10_000_000).unwrap(), 2108);
    }

    #[test]
    fn zero_rejected() {
        assert_eq!(floor_a_exact(0u32), Err(Error::ZeroIndex));
        assert_eq!(floor_via_alpha(0u32), Err(Error::ZeroIndex));
    }

    #[test]
    fn alpha_values() {
        assert_eq!(alpha_floor(0u32), big(0));
        assert_eq!(alpha_floor(1u32), big(7));
        assert_eq!(alpha_floor(2u32), big(18));
        // odd m = 2s - 1: alpha = 9 s^2 - 2; even m = 2s: floor = 9 s^2 + 9 s
        for s in 1u64..200 {
            assert_eq!(alpha_floor(2 * s - 1), big(9 * s * s - 2));
            assert_eq!(alpha_floor(2 * s), big(9 * s * s + 9 * s));
            assert_eq!(
                AlphaThreshold::new(2 * s).alpha_times_4,
                big(36 * s * s + 36 * s + 1)
            );
        }
    }

    #[test]
    fn alpha_method_examples() {
        assert_eq!(floor_via_alpha(1u32).unwrap(), big(1));
        assert_eq!(floor_via_alpha(7u32).unwrap(), big(1));
        assert_eq!(floor_via_alpha(8u32).unwrap(), big(2));
        assert_eq!(floor_via_alpha(18u32).unwrap(), big(2));
        assert_eq!(floor_via_alpha(19u32).unwrap(), big(3));
    }

    #[test]
    fn methods_agree_on_prefix() {
        for n in 1u64..50_000 {
            let a = floor_a_exact(n).unwrap();
            assert_eq!(a, floor_via_alpha(n).unwrap(), "n={n}");
            assert!(brackets_a(&big(n), &a), "n={n}");
        }
    }

    #[test]
    fn steps_exactly_at_thresholds() {
        for m in 1u64..500 {
            let last = alpha_floor(m);
            assert_eq!(floor_a_exact(last.clone()).unwrap(), big(m));
            assert_eq!(floor_a_exact(last + 1u32).unwrap(), big(m + 1));
        }
    }

    #[test]
    fn threshold_inequalities_small_m() {
        for m in 1..=1000 {
            assert!(threshold_inequalities_hold(m), "m={m}");
        }
        assert!(!threshold_inequalities_hold(0));
    }

    #[test]
    fn huge_index() {
        // n = 10^40: A(n) ~ (2/3) 10^20
        let n = BigUint::from(10u32).pow(40);
        let m = floor_a_exact(n.clone()).unwrap();
        assert!(brackets_a(&n, &m));
        assert_eq!(m, floor_via_alpha(n).unwrap());
        assert_eq!(m.to_string(), "66666666666666666666");
    }
}
