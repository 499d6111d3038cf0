//! Modified spherical Bessel functions `i_n`, `k_n` of non-negative integer
//! order, evaluated in exponentially scaled form
//!
//! ```text
//! î_n(s) = e^{-s} i_n(s),    k̂_n(s) = e^{s} k_n(s)
//! ```
//!
//! `k̂` comes from forward recurrence seeded with the closed forms of orders
//! 0 and 1; it is the dominant solution upward so the recurrence is stable.
//! `î` is the minimal solution upward once `n > s`, so it is produced by
//! Miller's backward recurrence and normalized against the closed form
//! `î_0(s) = (1 - e^{-2s}) / (2s)`. Both sequences are carried with a shared
//! power-of-two exponent and returned as [`ExpFloat`], so arbitrarily high
//! orders never overflow.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::extfloat::ExpFloat;

/// Order cap applied when the caller does not configure one.
pub const DEFAULT_ORDER_CAP: u32 = 512;

// Shared-exponent rescaling threshold for the recurrences.
const RESCALE_AT: f64 = 1.340_780_792_994_259_7e154; // 2^512
const RESCALE_BITS: i64 = 512;

/// Scaled values of `i_n(s)` and `k_n(s)` for one order and argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselEval {
    pub order: u32,
    pub arg: f64,
    i_hat: ExpFloat,
    k_hat: ExpFloat,
}

impl BesselEval {
    /// `e^{-s} i_n(s)` as `f64` (underflows to zero at extreme orders).
    pub fn i_scaled(&self) -> f64 {
        self.i_hat.to_f64()
    }

    /// `e^{s} k_n(s)` as `f64` (saturates to infinity at extreme orders).
    pub fn k_scaled(&self) -> f64 {
        self.k_hat.to_f64()
    }

    pub fn i_hat(&self) -> ExpFloat {
        self.i_hat
    }

    pub fn k_hat(&self) -> ExpFloat {
        self.k_hat
    }

    /// Unscaled `i_n(s)`.
    pub fn i_value(&self) -> ExpFloat {
        self.i_hat * ExpFloat::exp(self.arg)
    }

    /// Unscaled `k_n(s)`.
    pub fn k_value(&self) -> ExpFloat {
        self.k_hat * ExpFloat::exp(-self.arg)
    }
}

/// Backward-recurrence start index used for order `n` at argument `s`.
///
/// The relative error at order `n` decays like `Π r_j⁻²` over the steps
/// `j = n+1..N`, where `r_j = a + sqrt(a² + 1)`, `a = (2j+1)/(2s)`, is the
/// local growth ratio of `i_j`. The start is the first `N` where that product
/// drops below `e^-80`, plus five guard steps, and never less than `n + 15`.
pub fn miller_start(n: u32, s: f64) -> u32 {
    let mut damping = 0.0;
    let mut j = n;
    while damping < 80.0 {
        j += 1;
        let a = (2 * j + 1) as f64 / (2.0 * s);
        damping += 2.0 * (a + (a * a + 1.0).sqrt()).ln();
    }
    (j + 5).max(n + 15)
}

fn check_args(n: u32, s: f64, cap: u32) -> Result<()> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::domain(format!("Bessel argument must be positive and finite, got {s}")));
    }
    if n > cap {
        return Err(Error::Capacity { order: n, cap });
    }
    Ok(())
}

/// `î_0(s)`, accurate for small `s`.
fn i0_hat(s: f64) -> f64 {
    -(-2.0 * s).exp_m1() / (2.0 * s)
}

/// Scaled `k̂_j(s)` for `j` in `lo..=hi`.
fn k_hat_range(lo: u32, hi: u32, s: f64) -> Vec<ExpFloat> {
    let mut out = Vec::with_capacity((hi - lo + 1) as usize);
    let mut prev = FRAC_PI_2 / s;
    let mut cur = FRAC_PI_2 * (1.0 / s + 1.0 / (s * s));
    let mut exp: i64 = 0;
    if lo == 0 {
        out.push(ExpFloat::from_f64(prev));
    }
    if lo <= 1 && hi >= 1 {
        out.push(ExpFloat::from_f64(cur));
    }
    for j in 1..hi {
        let next = prev + (2 * j + 1) as f64 / s * cur;
        prev = cur;
        cur = next;
        if cur > RESCALE_AT {
            prev /= RESCALE_AT;
            cur /= RESCALE_AT;
            exp += RESCALE_BITS;
        }
        if j + 1 >= lo {
            out.push(ExpFloat::from_parts(cur, exp));
        }
    }
    out
}

/// Scaled `î_j(s)` for `j` in `lo..=hi`, by Miller's algorithm started at
/// `miller_start(hi, s)`.
fn i_hat_range(lo: u32, hi: u32, s: f64) -> Vec<ExpFloat> {
    let start = miller_start(hi, s);
    let mut raw = vec![ExpFloat::ZERO; (hi - lo + 1) as usize];
    // f_{start+1} = 0, f_start = 1; f_{j-1} = f_{j+1} + (2j+1)/s f_j
    let mut upper = 0.0_f64;
    let mut cur = 1.0_f64;
    let mut exp: i64 = 0;
    if start <= hi {
        unreachable!("Miller start must exceed the highest requested order");
    }
    for j in (1..=start).rev() {
        let lower = upper + (2 * j + 1) as f64 / s * cur;
        upper = cur;
        cur = lower;
        if cur > RESCALE_AT {
            upper /= RESCALE_AT;
            cur /= RESCALE_AT;
            exp += RESCALE_BITS;
        }
        let order = j - 1;
        if order >= lo && order <= hi {
            raw[(order - lo) as usize] = ExpFloat::from_parts(cur, exp);
        }
    }
    let f0 = ExpFloat::from_parts(cur, exp);
    let norm = ExpFloat::from_f64(i0_hat(s)) / f0;
    raw.into_iter().map(|f| f * norm).collect()
}

/// Scaled pair `(î_n(s), k̂_n(s))` with the default order cap.
pub fn bessel_pair(n: u32, s: f64) -> Result<BesselEval> {
    bessel_pair_capped(n, s, DEFAULT_ORDER_CAP)
}

pub fn bessel_pair_capped(n: u32, s: f64, cap: u32) -> Result<BesselEval> {
    check_args(n, s, cap)?;
    let i_hat = i_hat_range(n, n, s)[0];
    let k_hat = k_hat_range(n, n, s)[0];
    Ok(BesselEval { order: n, arg: s, i_hat, k_hat })
}

/// Orders `n` and `n + 1` at one argument, from a single pair of recurrence
/// sweeps. Only `n` is checked against the cap.
pub fn bessel_adjacent(n: u32, s: f64, cap: u32) -> Result<[BesselEval; 2]> {
    check_args(n, s, cap)?;
    let i = i_hat_range(n, n + 1, s);
    let k = k_hat_range(n, n + 1, s);
    Ok([
        BesselEval { order: n, arg: s, i_hat: i[0], k_hat: k[0] },
        BesselEval { order: n + 1, arg: s, i_hat: i[1], k_hat: k[1] },
    ])
}

/// Every order `0..=n_max` at one argument.
pub fn bessel_table(n_max: u32, s: f64, cap: u32) -> Result<Vec<BesselEval>> {
    check_args(n_max, s, cap)?;
    let i = i_hat_range(0, n_max, s);
    let k = k_hat_range(0, n_max, s);
    Ok(i.into_iter()
        .zip(k)
        .enumerate()
        .map(|(order, (i_hat, k_hat))| BesselEval { order: order as u32, arg: s, i_hat, k_hat })
        .collect())
}

/// Relative residual of `i_n k_{n+1} + i_{n+1} k_n = (π/2)/s²`.
pub fn wronskian_residual(n: u32, s: f64) -> Result<f64> {
    wronskian_residual_capped(n, s, DEFAULT_ORDER_CAP)
}

pub fn wronskian_residual_capped(n: u32, s: f64, cap: u32) -> Result<f64> {
    let [lo, hi] = bessel_adjacent(n, s, cap)?;
    let exact = FRAC_PI_2 / (s * s);
    let sum = lo.i_hat * hi.k_hat + hi.i_hat * lo.k_hat;
    Ok(((sum - exact) / exact).to_f64().abs())
}

/// The three Bessel cross products that build the mode functions, for
/// `0 < a <= b`:
///
/// ```text
/// K1 = i_n(b) k_n(a) - i_n(a) k_n(b)
/// K2 = i_n(a) k_{n+1}(b) + i_{n+1}(b) k_n(a)
/// K3 = i_{n+1}(a) k_n(a) + i_n(a) k_{n+1}(a)      (= π / (2 a²))
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossKernels {
    pub k1: ExpFloat,
    pub k2: ExpFloat,
    pub k3: ExpFloat,
}

impl CrossKernels {
    pub fn to_f64(&self) -> (f64, f64, f64) {
        (self.k1.to_f64(), self.k2.to_f64(), self.k3.to_f64())
    }

    /// Builds the kernels from already evaluated orders `n`, `n + 1` at `a` and `b`.
    pub fn from_evals(at_a: &[BesselEval; 2], at_b: &[BesselEval; 2]) -> Self {
        let (a, b) = (at_a[0].arg, at_b[0].arg);
        let grow = ExpFloat::exp(b - a);
        let decay = ExpFloat::exp(a - b);
        let [an, an1] = at_a;
        let [bn, bn1] = at_b;
        let k1 = grow * (bn.i_hat * an.k_hat) - decay * (an.i_hat * bn.k_hat);
        let k2 = decay * (an.i_hat * bn1.k_hat) + grow * (bn1.i_hat * an.k_hat);
        let k3 = an1.i_hat * an.k_hat + an.i_hat * an1.k_hat;
        CrossKernels { k1, k2, k3 }
    }
}

pub fn cross_kernel(n: u32, a: f64, b: f64) -> Result<CrossKernels> {
    cross_kernel_capped(n, a, b, DEFAULT_ORDER_CAP)
}

pub fn cross_kernel_capped(n: u32, a: f64, b: f64, cap: u32) -> Result<CrossKernels> {
    if !(a > 0.0) || !(a <= b) {
        return Err(Error::domain(format!("cross kernels need 0 < a <= b, got a = {a}, b = {b}")));
    }
    let at_a = bessel_adjacent(n, a, cap)?;
    let at_b = bessel_adjacent(n, b, cap)?;
    Ok(CrossKernels::from_evals(&at_a, &at_b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn order_zero_closed_forms() {
        let e = bessel_pair(0, 1.0).unwrap();
        assert!(rel(e.i_scaled(), (1.0 - (-2.0f64).exp()) / 2.0) < 1e-15);
        assert!(rel(e.k_scaled(), FRAC_PI_2) < 1e-15);
        assert!(rel(e.i_value().to_f64(), 1f64.sinh()) < 1e-15);
    }

    #[test]
    fn order_one_closed_forms() {
        let e = bessel_pair(1, 2.0).unwrap();
        let i1 = (-2.0f64).exp() * (-(2f64.sinh()) / 4.0 + 2f64.cosh() / 2.0);
        assert!(rel(e.i_scaled(), i1) < 1e-14, "{} vs {i1}", e.i_scaled());
        assert!(rel(e.k_scaled(), FRAC_PI_2 * 0.75) < 1e-15);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(matches!(bessel_pair(0, 0.0), Err(Error::Domain(_))));
        assert!(matches!(bessel_pair(0, -1.0), Err(Error::Domain(_))));
        assert!(matches!(bessel_pair(0, f64::NAN), Err(Error::Domain(_))));
        assert_eq!(bessel_pair(513, 1.0), Err(Error::Capacity { order: 513, cap: 512 }));
        assert!(bessel_pair_capped(600, 1.0, 700).is_ok());
        assert!(matches!(cross_kernel(2, 2.0, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn wronskian_examples() {
        assert!(wronskian_residual(3, 2.0).unwrap() <= 1e-12);
        assert!(wronskian_residual(0, 10.0).unwrap() <= 1e-12);
        assert!(wronskian_residual(60, 0.5).unwrap() <= 1e-10);
        let [lo, hi] = bessel_adjacent(3, 2.0, 512).unwrap();
        let sum = (lo.i_hat * hi.k_hat + hi.i_hat * lo.k_hat).to_f64();
        assert!((sum - std::f64::consts::PI / 8.0).abs() < 1e-14);
    }

    #[test]
    fn kernel_examples() {
        let k = cross_kernel(0, 1.0, 2.0).unwrap();
        assert!(rel(k.k1.to_f64(), FRAC_PI_2 * 1f64.sinh() / 2.0) < 1e-14);
        let k = cross_kernel(1, 1.5, 1.5).unwrap();
        assert_eq!(k.k1.to_f64(), 0.0);
        assert!(rel(k.k3.to_f64(), FRAC_PI_2 / 2.25) < 1e-14);
    }

    #[test]
    fn table_matches_single_evaluations() {
        let table = bessel_table(30, 3.7, 512).unwrap();
        for n in [0u32, 1, 7, 30] {
            let single = bessel_pair(n, 3.7).unwrap();
            assert!(rel(table[n as usize].i_scaled(), single.i_scaled()) < 1e-13);
            assert_eq!(table[n as usize].k_scaled(), single.k_scaled());
        }
    }

    #[test]
    fn high_orders_stay_finite_as_products() {
        let [lo, hi] = bessel_adjacent(512, 0.05, 512).unwrap();
        assert!(lo.k_scaled().is_infinite());
        assert!(lo.i_scaled() == 0.0);
        let w = (lo.i_hat * hi.k_hat + hi.i_hat * lo.k_hat).to_f64();
        assert!(rel(w, FRAC_PI_2 / 0.0025) < 1e-11);
    }
}
