//! Double-double ("twofold") arithmetic built on error-free transformations.
//!
//! A [`Dd`] stores an unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`,
//! giving roughly 106 bits of significand. Only the handful of operations
//! needed by the summation oracle and the split evaluator are provided.
//!
//! Every operation below has a relative error of at most a few `u^2`
//! (`u = 2^-53`). Callers that need rigorous bounds charge
//! [`DD_OP_REL`] per operation against the largest magnitude involved.

use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Unit roundoff of binary64.
pub const U: f64 = 1.0 / 9_007_199_254_740_992.0;

/// Per-operation relative error charged for any [`Dd`] operation.
///
/// The published bounds for the algorithms used here are at most `3.5u^2`
/// (add, divide by f64), `4u^2` (multiply) and `25/8 u^2` (square root);
/// `16u^2` covers each with room for the `O(u^3)` terms.
pub const DD_OP_REL: f64 = 16.0 * U * U;

/// `s + e == a + b` exactly, with `s = fl(a + b)`.
#[inline]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Same as [`two_sum`] but requires `|a| >= |b|` (or `a == 0`).
#[inline]
pub fn fast_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

/// `p + e == a * b` exactly, with `p = fl(a * b)`.
#[inline]
pub fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    pub fn new(hi: f64, lo: f64) -> Self {
        let (hi, lo) = two_sum(hi, lo);
        Dd { hi, lo }
    }

    /// Nearest binary64 to the represented value.
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    pub fn mul_f64(self, y: f64) -> Self {
        let (ch, cl1) = two_prod(self.hi, y);
        let cl2 = self.lo * y;
        let (th, tl1) = fast_two_sum(ch, cl2);
        let tl2 = tl1 + cl1;
        let (hi, lo) = fast_two_sum(th, tl2);
        Dd { hi, lo }
    }

    pub fn div_f64(self, y: f64) -> Self {
        let th = self.hi / y;
        let (ph, pl) = two_prod(th, y);
        let dh = self.hi - ph;
        let dt = dh - pl;
        let d = dt + self.lo;
        let tl = d / y;
        let (hi, lo) = fast_two_sum(th, tl);
        Dd { hi, lo }
    }

    /// Square root of a non-negative value: one Newton correction on the
    /// binary64 root, with the residual formed exactly.
    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Dd::ZERO;
        }
        let s = self.hi.sqrt();
        let (p, e) = two_prod(s, s);
        let r = ((self.hi - p) - e + self.lo) / (2.0 * s);
        let (hi, lo) = fast_two_sum(s, r);
        Dd { hi, lo }
    }

    /// Principal `r`-th root of a positive value, `r >= 1` integral.
    ///
    /// The binary64 estimate is refined by one Newton step whose residual is
    /// evaluated in double-double. Assuming the initial estimate is within a
    /// few ulps, the result is within [`Dd::root_rel_error`] relative error.
    pub fn root(self, r: u32) -> Self {
        match r {
            0 => panic!("zeroth root"),
            1 => self,
            2 => self.sqrt(),
            _ => {
                if self.hi <= 0.0 {
                    return Dd::ZERO;
                }
                let t0 = if r == 3 {
                    self.hi.cbrt()
                } else {
                    self.hi.powf(1.0 / f64::from(r))
                };
                let mut power = Dd::from(t0);
                for _ in 1..r {
                    power = power.mul_f64(t0);
                }
                let residual = power - self;
                let slope = f64::from(r) * t0.powi(r as i32 - 1);
                let (hi, lo) = two_sum(t0, -(residual.to_f64() / slope));
                Dd { hi, lo }
            }
        }
    }

    /// Relative error bound for [`Dd::root`] with index `r`.
    pub fn root_rel_error(r: u32) -> f64 {
        match r {
            1 => 0.0,
            2 => DD_OP_REL,
            _ => 32.0 * f64::from(r) * U * U,
        }
    }
}

impl From<f64> for Dd {
    fn from(hi: f64) -> Self {
        Dd { hi, lo: 0.0 }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, y: Dd) -> Dd {
        let (sh, sl) = two_sum(self.hi, y.hi);
        let (th, tl) = two_sum(self.lo, y.lo);
        let c = sl + th;
        let (vh, vl) = fast_two_sum(sh, c);
        let w = tl + vl;
        let (hi, lo) = fast_two_sum(vh, w);
        Dd { hi, lo }
    }
}

impl Add<f64> for Dd {
    type Output = Dd;
    fn add(self, y: f64) -> Dd {
        let (sh, sl) = two_sum(self.hi, y);
        let v = self.lo + sl;
        let (hi, lo) = fast_two_sum(sh, v);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, y: Dd) -> Dd {
        self + (-y)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, y: Dd) -> Dd {
        let (ch, cl1) = two_prod(self.hi, y.hi);
        let tl0 = self.lo * y.lo;
        let tl1 = self.hi.mul_add(y.lo, tl0);
        let cl2 = self.lo.mul_add(y.hi, tl1);
        let cl3 = cl1 + cl2;
        let (hi, lo) = fast_two_sum(ch, cl3);
        Dd { hi, lo }
    }
}

impl Mul<f64> for Dd {
    type Output = Dd;
    fn mul(self, y: f64) -> Dd {
        self.mul_f64(y)
    }
}

impl Div<f64> for Dd {
    type Output = Dd;
    fn div(self, y: f64) -> Dd {
        self.div_f64(y)
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi)? {
            Ordering::Equal => self.lo.partial_cmp(&other.lo),
            ord => Some(ord),
        }
    }
}

/// `x` rounded up to a value no smaller than `x * (1 + k u)`; used to
/// absorb the rounding of a short chain of `k` positive binary64 operations.
pub(crate) fn inflate(x: f64, k: u32) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    (x * (1.0 + f64::from(k + 1) * 2.0 * U)).next_up()
}

/// Rounded-up sum of non-negative error terms.
pub(crate) fn sum_up(terms: &[f64]) -> f64 {
    let s: f64 = terms.iter().sum();
    inflate(s, terms.len() as u32)
}
