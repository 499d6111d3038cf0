//! Axisymmetric spherical harmonics `Y_{n,0}`, orthonormal on the unit sphere.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Legendre polynomial `P_n(x)` by the three-term recurrence.
pub fn legendre_p(n: u32, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let (mut prev, mut cur) = (1.0, x);
    for k in 1..n {
        let k = k as f64;
        let next = ((2.0 * k + 1.0) * x * cur - k * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `sqrt((2n+1)/(4π))`, the normalization and the maximum of `|Y_{n,0}|`.
pub fn y_n0_norm(n: u32) -> f64 {
    ((2 * n + 1) as f64 / (4.0 * PI)).sqrt()
}

/// `Y_{n,0}(θ) = sqrt((2n+1)/(4π)) P_n(cos θ)`.
pub fn y_n0(n: u32, theta: f64) -> Result<f64> {
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::domain(format!("polar angle {theta} outside [0, π]")));
    }
    Ok(y_n0_norm(n) * legendre_p(n, theta.cos()))
}

/// `Y_{n,0}` sampled on a θ-grid.
#[derive(Debug, Clone, PartialEq)]
pub struct LegendreMode {
    pub degree: u32,
    pub theta: Vec<f64>,
    pub values: Vec<f64>,
}

impl LegendreMode {
    /// Samples on `points` uniformly spaced angles covering `[0, π]`.
    pub fn uniform(degree: u32, points: usize) -> Result<Self> {
        if points < 2 {
            return Err(Error::domain("a θ-grid needs at least two points"));
        }
        let theta: Vec<f64> = uniform_theta(points);
        let values = theta.iter().map(|&t| y_n0(degree, t)).collect::<Result<_>>()?;
        Ok(LegendreMode { degree, theta, values })
    }
}

/// `points` angles `jπ/(points-1)`, with the last one pinned to `π`.
pub fn uniform_theta(points: usize) -> Vec<f64> {
    let m = (points - 1) as f64;
    (0..points).map(|j| if j + 1 == points { PI } else { PI * j as f64 / m }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_mode() {
        for t in [0.0, 0.4, PI] {
            assert!((y_n0(0, t).unwrap() - 1.0 / (4.0 * PI).sqrt()).abs() < 1e-16);
        }
    }

    #[test]
    fn quadrupole_at_equator() {
        let y = y_n0(2, PI / 2.0).unwrap();
        assert!((y - (5.0 / (4.0 * PI)).sqrt() * -0.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_angles_outside_range() {
        assert!(y_n0(3, -0.1).is_err());
        assert!(y_n0(3, 3.2).is_err());
    }

    #[test]
    fn parity() {
        for n in 0..12 {
            let a = y_n0(n, 0.37).unwrap();
            let b = y_n0(n, PI - 0.37).unwrap();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((b - sign * a).abs() < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn uniform_grid_endpoints() {
        let m = LegendreMode::uniform(4, 33).unwrap();
        assert_eq!(m.theta[0], 0.0);
        assert_eq!(*m.theta.last().unwrap(), PI);
        assert_eq!(m.values.len(), 33);
    }
}
