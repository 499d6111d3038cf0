//! Extended-exponent reals.
//!
//! Modified spherical Bessel values leave the `f64` range long before the
//! quantities built from them do: at `n = 200, s = 0.5`, `k_n(s)` is near
//! `1e+480` while every ratio used by the mode functions is of order one.
//! [`ExpFloat`] stores `mantissa * 2^exponent` with an `i64` exponent so
//! products and quotients of such values can be formed without overflow and
//! collapsed to `f64` only at the end.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A real number `mant * 2^exp` with `|mant|` in `[0.5, 1)` (or zero).
#[derive(Clone, Copy, PartialEq)]
pub struct ExpFloat {
    mant: f64,
    exp: i64,
}

/// Splits a finite non-zero `x` into `(m, e)` with `x = m * 2^e`, `|m|` in `[0.5, 1)`.
fn frexp(x: f64) -> (f64, i64) {
    if x == 0.0 || !x.is_finite() {
        return (x, 0);
    }
    let bits = x.to_bits();
    let raw = ((bits >> 52) & 0x7ff) as i64;
    if raw == 0 {
        // subnormal
        let (m, e) = frexp(x * f64::from_bits(0x43f0_0000_0000_0000)); // 2^64
        return (m, e - 64);
    }
    let m = f64::from_bits((bits & !(0x7ff << 52)) | (1022 << 52));
    (m, raw - 1022)
}

/// `x * 2^e`, saturating to infinity or zero outside the `f64` range.
fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= f64::from_bits(0x7e70_0000_0000_0000); // 2^1000
        e -= 1000;
        if x.is_infinite() {
            return x;
        }
    }
    while e < -1000 {
        x *= f64::from_bits(0x0170_0000_0000_0000); // 2^-1000
        e += 1000;
        if x == 0.0 {
            return x;
        }
    }
    x * 2f64.powi(e as i32)
}

impl ExpFloat {
    pub const ZERO: ExpFloat = ExpFloat { mant: 0.0, exp: 0 };
    pub const ONE: ExpFloat = ExpFloat { mant: 0.5, exp: 1 };

    /// Builds from `m * 2^e`. `m` must be finite.
    pub fn from_parts(m: f64, e: i64) -> Self {
        debug_assert!(m.is_finite());
        if m == 0.0 {
            return Self::ZERO;
        }
        let (mant, de) = frexp(m);
        ExpFloat { mant, exp: e + de }
    }

    pub fn from_f64(x: f64) -> Self {
        Self::from_parts(x, 0)
    }

    /// `e^x` for any finite `x`.
    pub fn exp(x: f64) -> Self {
        if x.abs() < 700.0 {
            return Self::from_f64(x.exp());
        }
        let k = (x / std::f64::consts::LN_2).floor();
        let r = x - k * std::f64::consts::LN_2;
        Self::from_parts(r.exp(), k as i64)
    }

    pub fn to_f64(self) -> f64 {
        ldexp(self.mant, self.exp)
    }

    /// Natural logarithm of `|self|`.
    pub fn ln_abs(self) -> f64 {
        self.mant.abs().ln() + self.exp as f64 * std::f64::consts::LN_2
    }

    pub fn is_zero(self) -> bool {
        self.mant == 0.0
    }

    pub fn is_finite(self) -> bool {
        self.mant.is_finite()
    }

    /// `-1`, `0` or `1`.
    pub fn signum(self) -> f64 {
        if self.mant > 0.0 {
            1.0
        } else if self.mant < 0.0 {
            -1.0
        } else {
            0.0
        }
    }

    pub fn abs(self) -> Self {
        ExpFloat { mant: self.mant.abs(), exp: self.exp }
    }

    /// `self * 2^k`, exact.
    pub fn scale2(self, k: i64) -> Self {
        if self.is_zero() {
            self
        } else {
            ExpFloat { mant: self.mant, exp: self.exp + k }
        }
    }

    pub fn recip(self) -> Self {
        ExpFloat::ONE / self
    }

    /// Ratio `self / other` collapsed to `f64`.
    pub fn ratio(self, other: ExpFloat) -> f64 {
        (self / other).to_f64()
    }
}

impl Default for ExpFloat {
    fn default() -> Self {
        Self::ZERO
    }
}

impl From<f64> for ExpFloat {
    fn from(x: f64) -> Self {
        Self::from_f64(x)
    }
}

impl fmt::Debug for ExpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // decimal form m * 10^d
        let l10 = self.ln_abs() / std::f64::consts::LN_10;
        let d = l10.floor();
        let m = self.signum() * 10f64.powf(l10 - d);
        write!(f, "{m:.15}e{d}")
    }
}

impl fmt::Display for ExpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Mul for ExpFloat {
    type Output = ExpFloat;
    fn mul(self, rhs: ExpFloat) -> ExpFloat {
        ExpFloat::from_parts(self.mant * rhs.mant, self.exp + rhs.exp)
    }
}

impl Mul<f64> for ExpFloat {
    type Output = ExpFloat;
    fn mul(self, rhs: f64) -> ExpFloat {
        ExpFloat::from_parts(self.mant * rhs, self.exp)
    }
}

impl Mul<ExpFloat> for f64 {
    type Output = ExpFloat;
    fn mul(self, rhs: ExpFloat) -> ExpFloat {
        rhs * self
    }
}

impl Div for ExpFloat {
    type Output = ExpFloat;
    fn div(self, rhs: ExpFloat) -> ExpFloat {
        if rhs.is_zero() {
            let q = self.mant / 0.0;
            return ExpFloat { mant: if q.is_nan() { f64::NAN } else { q }, exp: 0 };
        }
        ExpFloat::from_parts(self.mant / rhs.mant, self.exp - rhs.exp)
    }
}

impl Div<f64> for ExpFloat {
    type Output = ExpFloat;
    fn div(self, rhs: f64) -> ExpFloat {
        self / ExpFloat::from_f64(rhs)
    }
}

impl Neg for ExpFloat {
    type Output = ExpFloat;
    fn neg(self) -> ExpFloat {
        ExpFloat { mant: -self.mant, exp: self.exp }
    }
}

impl Add for ExpFloat {
    type Output = ExpFloat;
    fn add(self, rhs: ExpFloat) -> ExpFloat {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (big, small) = if self.exp >= rhs.exp { (self, rhs) } else { (rhs, self) };
        let shift = big.exp - small.exp;
        if shift > 64 {
            return big;
        }
        ExpFloat::from_parts(big.mant + ldexp(small.mant, -shift), big.exp)
    }
}

impl Add<f64> for ExpFloat {
    type Output = ExpFloat;
    fn add(self, rhs: f64) -> ExpFloat {
        self + ExpFloat::from_f64(rhs)
    }
}

impl Sub for ExpFloat {
    type Output = ExpFloat;
    fn sub(self, rhs: ExpFloat) -> ExpFloat {
        self + (-rhs)
    }
}

impl Sub<f64> for ExpFloat {
    type Output = ExpFloat;
    fn sub(self, rhs: f64) -> ExpFloat {
        self + ExpFloat::from_f64(-rhs)
    }
}

impl PartialOrd for ExpFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let d = *self - *other;
        if d.mant.is_nan() {
            None
        } else {
            d.mant.partial_cmp(&0.0)
        }
    }
}
