//! Auxiliary functions from the sign argument for `B_0 < 0`.
//!
//! `R` is the outer radius and `s ∈ (0, R]` plays the role of the core
//! radius. They are exposed so the sign claims can be checked numerically.

use std::f64::consts::FRAC_PI_2;

fn i0(s: f64) -> f64 {
    s.sinh() / s
}

fn i1(s: f64) -> f64 {
    (s * s.cosh() - s.sinh()) / (s * s)
}

fn k0(s: f64) -> f64 {
    FRAC_PI_2 * (-s).exp() / s
}

fn k1(s: f64) -> f64 {
    FRAC_PI_2 * (-s).exp() * (1.0 / s + 1.0 / (s * s))
}

/// `ξ(s)`; `M_{1,0}` is `ξ(ρ)` times a positive factor.
pub fn xi(outer: f64, s: f64) -> f64 {
    let r = outer;
    3.0 * r * s * s * (i0(r) * k1(s) + i1(s) * k0(r))
        - 6.0 * s * s * (i1(r) * k1(s) - i1(s) * k1(r))
        - (r.powi(3) + 2.0 * s.powi(3)) * (i0(s) * k1(r) + i1(r) * k0(s))
}

/// `η(s)`, with `M_{2,0} = π²/(8R⁴ρ³(R³-ρ³)) η(ρ)`.
pub fn eta(outer: f64, s: f64) -> f64 {
    let r = outer;
    let (r2, r3, r4, r5) = (r * r, r.powi(3), r.powi(4), r.powi(5));
    let (s2, s3, s4) = (s * s, s.powi(3), s.powi(4));
    let arg = 2.0 * (r - s);
    (s4 - 8.0 * r * s3 + 6.0 * (r2 + 1.0) * s2 + 2.0 * (r3 - 3.0 * r) * s - r4) * arg.sinh()
        + (-2.0 * r * s4 + (3.0 * r2 + 4.0) * s3 - 12.0 * r * s2 + (-r4 + 3.0 * r2 + 3.0) * s + 2.0 * r3) * arg.cosh()
        - (r2 - 2.0) * s3
        + (3.0 * r4 + 3.0 * r2 - 3.0) * s
        - 2.0 * r5
        - 2.0 * r3
}

/// Sum of the magnitudes of the terms of `η(s)`; `64 ε` times this over
/// `|η(s)|` bounds the rounding error of [`eta`].
pub fn eta_magnitude(outer: f64, s: f64) -> f64 {
    let r = outer;
    let (r2, r3, r4, r5) = (r * r, r.powi(3), r.powi(4), r.powi(5));
    let (s2, s3, s4) = (s * s, s.powi(3), s.powi(4));
    let arg = 2.0 * (r - s);
    (s4 + 8.0 * r * s3 + 6.0 * (r2 + 1.0) * s2 + 2.0 * (r3 + 3.0 * r) * s + r4) * arg.sinh()
        + (2.0 * r * s4 + (3.0 * r2 + 4.0) * s3 + 12.0 * r * s2 + (r4 + 3.0 * r2 + 3.0) * s + 2.0 * r3) * arg.cosh()
        + (r2 + 2.0) * s3
        + (3.0 * r4 + 3.0 * r2 + 3.0) * s
        + 2.0 * r5
        + 2.0 * r3
}

/// Sum of the magnitudes of the three terms of `ξ(s)`.
pub fn xi_magnitude(outer: f64, s: f64) -> f64 {
    let r = outer;
    3.0 * r * s * s * (i0(r) * k1(s) + i1(s) * k0(r))
        + 6.0 * s * s * (i1(r) * k1(s) + i1(s) * k1(r))
        + (r.powi(3) + 2.0 * s.powi(3)) * (i0(s) * k1(r) + i1(r) * k0(s))
}

/// `ζ(s)`, with `η''(s) = 2sζ(s)`.
pub fn zeta(outer: f64, s: f64) -> f64 {
    let r = outer;
    let (r2, r3, r4) = (r * r, r.powi(3), r.powi(4));
    let arg = 2.0 * (r - s);
    (2.0 * s.powi(3) + (-6.0 * r2 - 6.0) * s + 4.0 * r3 + 12.0 * r) * arg.sinh()
        + (-4.0 * r * s.powi(3) + 6.0 * r2 * s * s + 12.0 * r * s - 2.0 * r4 - 9.0 * r2 - 6.0) * arg.cosh()
        - 3.0 * (r2 - 2.0)
}

/// `w(s)`, with `ζ'(s) = e^{-2(R-s)} w(s)`.
pub fn w(outer: f64, s: f64) -> f64 {
    let r = outer;
    let (r2, r3, r4) = (r * r, r.powi(3), r.powi(4));
    let (s2, s3) = (s * s, s.powi(3));
    ((4.0 * r - 2.0) * s3 + (-6.0 * r2 - 6.0 * r + 3.0) * s2 + (12.0 * r2 - 12.0 * r + 6.0) * s + 2.0 * r4 - 4.0 * r3
        + 6.0 * r2
        - 6.0 * r
        + 3.0)
        * (4.0 * (r - s)).exp()
        - (4.0 * r + 2.0) * s3
        + (6.0 * r2 - 6.0 * r - 3.0) * s2
        + (12.0 * r2 + 12.0 * r + 6.0) * s
        - 2.0 * r4
        - 4.0 * r3
        - 6.0 * r2
        - 6.0 * r
        - 3.0
}

/// `u(R)` for fixed `s`: `w` read as a function of the outer radius.
pub fn u(outer: f64, s: f64) -> f64 {
    let r = outer;
    let (s2, s3) = (s * s, s.powi(3));
    (2.0 * r.powi(4) - 4.0 * r.powi(3)
        + (-6.0 * s2 + 12.0 * s + 6.0) * r * r
        + (4.0 * s3 - 6.0 * s2 - 12.0 * s - 6.0) * r
        - 2.0 * s3
        + 3.0 * s2
        + 6.0 * s
        + 3.0)
        * (4.0 * (r - s)).exp()
        - 2.0 * r.powi(4)
        - 4.0 * r.powi(3)
        + (6.0 * s2 + 12.0 * s - 6.0) * r * r
        - (4.0 * s3 + 6.0 * s2 - 12.0 * s + 6.0) * r
        - 2.0 * s3
        - 3.0 * s2
        + 6.0 * s
        - 3.0
}

/// `v(R)` for fixed `s`, with `u⁽⁵⁾(R) = 64 e^{4(R-s)} v(R)`.
pub fn v(outer: f64, s: f64) -> f64 {
    let r = outer;
    let (s2, s3) = (s * s, s.powi(3));
    32.0 * r.powi(4)
        + 96.0 * r.powi(3)
        + (-96.0 * s2 + 192.0 * s + 96.0) * r * r
        + (64.0 * s3 - 336.0 * s2 + 288.0 * s + 24.0) * r
        + 48.0 * s3
        - 192.0 * s2
        + 96.0 * s
        + 3.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d1(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
        (f(x + h) - f(x - h)) / (2.0 * h)
    }

    fn d2(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
        (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
    }

    #[test]
    fn vanish_at_outer_radius() {
        for r in [0.7, 1.9, 3.5] {
            assert!(xi(r, r).abs() < 1e-12);
            assert!(eta(r, r).abs() < 1e-10 * r.powi(5));
            assert!(zeta(r, r).abs() < 1e-10 * r.powi(4));
            assert!(d1(|s| eta(r, s), r, 1e-5).abs() < 1e-6 * r.powi(5));
        }
    }

    #[test]
    fn derivative_relations() {
        let r = 2.0;
        for s in [0.4, 1.0, 1.6] {
            let lhs = d2(|x| eta(r, x), s, 1e-4);
            assert!((lhs - 2.0 * s * zeta(r, s)).abs() < 1e-4 * lhs.abs().max(1.0), "s = {s}");
            let zp = d1(|x| zeta(r, x), s, 1e-5);
            let want = (-2.0 * (r - s)).exp() * w(r, s);
            assert!((zp - want).abs() < 1e-6 * want.abs().max(1.0), "s = {s}");
        }
    }

    #[test]
    fn signs_on_shell() {
        for r in [0.6, 2.0, 5.0] {
            for k in 1..20 {
                let s = r * k as f64 / 20.0;
                assert!(xi(r, s) < 0.0);
                assert!(eta(r, s) < 0.0);
                assert!(w(r, s) > 0.0);
                assert!(u(r + s, s) > 0.0);
            }
        }
    }

    #[test]
    fn u_and_v_at_the_base_point() {
        for s in [0.3, 1.0, 2.2] {
            assert!(u(s, s).abs() < 1e-12);
            assert!((v(s, s) - (192.0 * s * s + 120.0 * s + 3.0)).abs() < 1e-10);
            let u3 = {
                let h = 1e-2;
                (u(s + 2.0 * h, s) - 2.0 * u(s + h, s) + 2.0 * u(s - h, s) - u(s - 2.0 * h, s)) / (2.0 * h.powi(3))
            };
            assert!((u3 - 240.0 * s * s).abs() < 0.05 * 240.0 * s * s, "s = {s}: {u3}");
        }
    }
}
