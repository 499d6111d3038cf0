//! First-order geometry and fields of the symmetry-breaking branches.
//!
//! A single even mode `n` with `a_{n,0} = 1` perturbs the outer sphere to
//! `R + εY_{n,0}(θ)` and the core to `ρ + ε t Y_{n,0}(θ)`, where
//! `t = λQ_n'(ρ)/σ̲`. Second-order corrections are not computed.

use crate::error::{Error, Result};
use crate::radial::RadialSolution;
use crate::specfun::{uniform_theta, y_n0, y_n0_norm};
use crate::spectrum::{BifurcationReport, ModeBasis, PressureMode};

/// Boundary graphs of a first-order branch on a uniform θ-grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchShape {
    pub n: u32,
    pub mu_n: f64,
    pub epsilon: f64,
    /// Inner amplitude `λQ_n'(ρ)/σ̲`.
    pub t_coeff: f64,
    /// Admissibility bound on `|ε|`.
    pub epsilon_max: f64,
    pub theta: Vec<f64>,
    pub outer: Vec<f64>,
    pub inner: Vec<f64>,
}

/// `λQ_n'(ρ)/σ̲`.
pub fn inner_amplitude(sol: &RadialSolution, n: u32) -> Result<f64> {
    Ok(sol.lambda * ModeBasis::new(sol, n)?.qp_rho() / sol.sigma_under())
}

/// `0.2(R - ρ) / (max|Y_{n,0}| · max(1, |t|))`.
pub fn epsilon_bound(sol: &RadialSolution, n: u32, t_coeff: f64) -> f64 {
    0.2 * (sol.outer_radius - sol.rho()) / (y_n0_norm(n) * t_coeff.abs().max(1.0))
}

pub fn branch_shape(
    sol: &RadialSolution,
    report: &BifurcationReport,
    n: u32,
    epsilon: f64,
    theta_grid: usize,
) -> Result<BranchShape> {
    let mu_n = report.mu_of(n).ok_or_else(|| Error::Mode {
        n,
        reason: format!("bifurcation modes are the even n in [{}, {}]", report.n_double_star, report.n_max),
    })?;
    if theta_grid < 32 {
        return Err(Error::domain(format!("theta grid needs at least 32 points, got {theta_grid}")));
    }
    if !epsilon.is_finite() {
        return Err(Error::domain(format!("epsilon must be finite, got {epsilon}")));
    }
    let t_coeff = inner_amplitude(sol, n)?;
    let epsilon_max = epsilon_bound(sol, n, t_coeff);
    if epsilon.abs() >= epsilon_max {
        return Err(Error::Amplitude { epsilon: epsilon.abs(), bound: epsilon_max });
    }
    let theta = uniform_theta(theta_grid);
    let y: Vec<f64> = theta.iter().map(|&t| y_n0(n, t)).collect::<Result<_>>()?;
    let outer = y.iter().map(|v| sol.outer_radius + epsilon * v).collect();
    let inner = y.iter().map(|v| sol.rho() + epsilon * t_coeff * v).collect();
    Ok(BranchShape { n, mu_n, epsilon, t_coeff, epsilon_max, theta, outer, inner })
}

/// `(σ_1, p_1)` at `(r, θ)` for the single mode `n` at intensity `μ`:
/// `σ_1 = -λQ_n(r)Y_{n,0}(θ)` on the shell and `0` in the core,
/// `p_1 = P_n(r)Y_{n,0}(θ)`.
pub fn linearized_fields(sol: &RadialSolution, n: u32, mu: f64, r: f64, theta: f64) -> Result<(f64, f64)> {
    superposed_fields(sol, &[(n, 1.0)], mu, r, theta)
}

/// Linear combination `Σ a_n (σ_1, p_1)_n` of axisymmetric modes.
pub fn superposed_fields(
    sol: &RadialSolution,
    coeffs: &[(u32, f64)],
    mu: f64,
    r: f64,
    theta: f64,
) -> Result<(f64, f64)> {
    if !(r >= 0.0 && r <= sol.outer_radius) {
        return Err(Error::domain(format!("r = {r} outside [0, R = {}]", sol.outer_radius)));
    }
    let (mut s1, mut p1) = (0.0, 0.0);
    for &(n, a) in coeffs {
        let y = y_n0(n, theta)?;
        let pressure = PressureMode::new(sol, n, mu)?;
        if r > sol.rho() {
            s1 -= a * sol.lambda * ModeBasis::new(sol, n)?.q(r)? * y;
        }
        p1 += a * pressure.value(r)? * y;
    }
    Ok((s1, p1))
}

/// Rows `(r, θ, σ_1, p_1)` on a tensor grid with `r_points` radii in `[0, R]`.
pub fn field_grid(
    sol: &RadialSolution,
    n: u32,
    mu: f64,
    r_points: usize,
    theta_points: usize,
) -> Result<Vec<[f64; 4]>> {
    if r_points < 2 || theta_points < 2 {
        return Err(Error::domain("field grids need at least two points per axis"));
    }
    let basis = ModeBasis::new(sol, n)?;
    let pressure = PressureMode::new(sol, n, mu)?;
    let theta = uniform_theta(theta_points);
    let mut rows = Vec::with_capacity(r_points * theta_points);
    for i in 0..r_points {
        let r = if i + 1 == r_points { sol.outer_radius } else { sol.outer_radius * i as f64 / (r_points - 1) as f64 };
        let q = if r > sol.rho() { basis.q(r)? } else { 0.0 };
        let p = pressure.value(r)?;
        for &t in &theta {
            let y = y_n0(n, t)?;
            rows.push([r, t, -sol.lambda * q * y, p * y]);
        }
    }
    Ok(rows)
}

/// `∂²p_s/∂r²(R) + P_n'(R)`, the coefficient of `Y_{n,0}` in the
/// linearized normal velocity. Vanishes exactly at `μ = μ_n`.
pub fn eigen_relation(sol: &RadialSolution, n: u32, mu: f64) -> Result<f64> {
    let r = sol.outer_radius;
    Ok(sol.p_hat_second(mu, r)? + PressureMode::new(sol, n, mu)?.derivative(r)?)
}

/// Sum of the magnitudes of the terms assembled by [`eigen_relation`];
/// the rounding floor of that sum is a small multiple of `ε` times this.
pub fn eigen_relation_scale(sol: &RadialSolution, n: u32, mu: f64) -> Result<f64> {
    let r = sol.outer_radius;
    let st = sol.sigma_tilde;
    let base = mu * (sol.sigma_hat_second(r)?.abs() + st / 3.0 + 2.0 * st * sol.rho().powi(3) / (3.0 * r.powi(3)));
    Ok(base + PressureMode::new(sol, n, mu)?.derivative(r)?.abs())
}
