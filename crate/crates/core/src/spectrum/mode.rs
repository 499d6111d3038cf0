//! Mode functions `Q_n` (nutrient) and `P_n` (pressure) of the linearized
//! problem around the radial state.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::extfloat::ExpFloat;
use crate::radial::RadialSolution;
use crate::specfun::{bessel_adjacent, BesselEval, CrossKernels};

/// Bessel data for one mode: orders `n, n+1` at `ρ` and `R`, the kernels
/// `K1_n(ρ,R)`, `K2_n(ρ,R)` and the denominator
/// `D_n = (n/R + β) K1_n(ρ,R) + K2_n(ρ,R)`.
#[derive(Debug, Clone, Copy)]
pub struct ModeBasis {
    pub n: u32,
    pub(crate) rho: f64,
    pub(crate) outer: f64,
    pub(crate) cap: u32,
    pub(crate) at_rho: [BesselEval; 2],
    pub(crate) k1: ExpFloat,
    pub(crate) k2: ExpFloat,
    pub(crate) denom: ExpFloat,
}

impl ModeBasis {
    pub fn new(sol: &RadialSolution, n: u32) -> Result<Self> {
        let cap = sol.params.order_cap;
        let (rho, outer) = (sol.rho(), sol.outer_radius);
        let at_rho = bessel_adjacent(n, rho, cap)?;
        let at_r = bessel_adjacent(n, outer, cap)?;
        let k = CrossKernels::from_evals(&at_rho, &at_r);
        let denom = k.k1 * (n as f64 / outer + sol.beta()) + k.k2;
        Ok(ModeBasis { n, rho, outer, cap, at_rho, k1: k.k1, k2: k.k2, denom })
    }

    /// `(K1_n(ρ,r), K2_n(ρ,r))` for `r >= ρ`.
    fn kernels_at(&self, r: f64) -> Result<(ExpFloat, ExpFloat)> {
        if r == self.outer {
            return Ok((self.k1, self.k2));
        }
        let at_r = bessel_adjacent(self.n, r, self.cap)?;
        let k = CrossKernels::from_evals(&self.at_rho, &at_r);
        Ok((k.k1, k.k2))
    }

    fn check_shell(&self, r: f64) -> Result<()> {
        if !(r >= self.rho && r <= self.outer) {
            return Err(Error::domain(format!(
                "Q_n is defined on [rho, R] = [{}, {}], got r = {r}",
                self.rho, self.outer
            )));
        }
        Ok(())
    }

    /// `Q_n(R)`.
    pub fn q_r(&self) -> f64 {
        self.k1.ratio(self.denom)
    }

    /// `Q_n'(ρ) = (π/(2ρ²)) / D_n`.
    pub fn qp_rho(&self) -> f64 {
        (ExpFloat::from_f64(PI / (2.0 * self.rho * self.rho)) / self.denom).to_f64()
    }

    /// `Q_n'(R) - (n/R) Q_n(R) = K2_n(ρ,R) / D_n`, free of cancellation.
    pub fn qp_r_shifted(&self) -> f64 {
        self.k2.ratio(self.denom)
    }

    /// `Q_n'(R)`.
    pub fn qp_r(&self) -> f64 {
        self.n as f64 / self.outer * self.q_r() + self.qp_r_shifted()
    }

    pub fn q(&self, r: f64) -> Result<f64> {
        self.check_shell(r)?;
        if r == self.rho {
            return Ok(0.0);
        }
        let (k1, _) = self.kernels_at(r)?;
        Ok(k1.ratio(self.denom))
    }

    pub fn q_prime(&self, r: f64) -> Result<f64> {
        self.check_shell(r)?;
        if r == self.rho {
            return Ok(self.qp_rho());
        }
        let (k1, k2) = self.kernels_at(r)?;
        Ok(self.n as f64 / r * k1.ratio(self.denom) + k2.ratio(self.denom))
    }
}

/// `Q_n(r)` on `[ρ, R]`.
pub fn q_n(sol: &RadialSolution, n: u32, r: f64) -> Result<f64> {
    ModeBasis::new(sol, n)?.q(r)
}

/// `Q_n'(r)` on `[ρ, R]`; at `r = ρ` the Wronskian closed form is used.
pub fn q_n_prime(sol: &RadialSolution, n: u32, r: f64) -> Result<f64> {
    ModeBasis::new(sol, n)?.q_prime(r)
}

/// Pressure mode `P_n` for proliferation intensity `μ`.
#[derive(Debug, Clone, Copy)]
pub struct PressureMode {
    basis: ModeBasis,
    rho: f64,
    outer: f64,
    /// `λμ`
    lam_mu: f64,
    /// `λμσ̃Q_n'(ρ) / ((2n+1)σ̲)`
    kc: f64,
    /// `(1/R²)(1 - n(n+1)/2)`
    boundary: f64,
}

impl PressureMode {
    pub fn new(sol: &RadialSolution, n: u32, mu: f64) -> Result<Self> {
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(Error::domain(format!("mu must be positive, got {mu}")));
        }
        let basis = ModeBasis::new(sol, n)?;
        let lam_mu = sol.lambda * mu;
        let nf = n as f64;
        let kc = lam_mu * sol.sigma_tilde * basis.qp_rho() / ((2.0 * nf + 1.0) * sol.sigma_under());
        let outer = sol.outer_radius;
        let boundary = (1.0 - nf * (nf + 1.0) / 2.0) / (outer * outer);
        Ok(PressureMode { basis, rho: sol.rho(), outer, lam_mu, kc, boundary })
    }

    fn check(&self, r: f64) -> Result<()> {
        if !(r >= 0.0 && r <= self.outer) {
            return Err(Error::domain(format!("P_n is defined on [0, R = {}], got r = {r}", self.outer)));
        }
        Ok(())
    }

    /// `(r/R)^n`, and its derivative `(n/R)(r/R)^{n-1}`.
    fn harmonic(&self, r: f64) -> (f64, f64) {
        let n = self.basis.n as i32;
        let x = r / self.outer;
        let d = if n == 0 { 0.0 } else { n as f64 / self.outer * x.powi(n - 1) };
        (x.powi(n), d)
    }

    pub fn value(&self, r: f64) -> Result<f64> {
        self.check(r)?;
        let n = self.basis.n as i32;
        let rho = self.rho;
        let tail = rho * (rho / self.outer).powi(n + 1);
        let (h, _) = self.harmonic(r);
        let q_r = self.basis.q_r();
        if r <= rho {
            Ok(self.kc * (rho * (r / rho).powi(n) - tail * h) - self.lam_mu * h * q_r - h * self.boundary)
        } else {
            let q = self.basis.q(r)?;
            Ok(self.kc * (rho * (rho / r).powi(n + 1) - tail * h) + self.lam_mu * (q - h * q_r) - h * self.boundary)
        }
    }

    pub fn derivative(&self, r: f64) -> Result<f64> {
        self.check(r)?;
        let n = self.basis.n as i32;
        let nf = n as f64;
        let rho = self.rho;
        let tail = rho * (rho / self.outer).powi(n + 1);
        let (_, dh) = self.harmonic(r);
        let q_r = self.basis.q_r();
        if r <= rho {
            let inner = if n == 0 { 0.0 } else { nf * (r / rho).powi(n - 1) };
            Ok(self.kc * (inner - tail * dh) - self.lam_mu * dh * q_r - dh * self.boundary)
        } else {
            let qp = self.basis.q_prime(r)?;
            Ok(self.kc * (-(nf + 1.0) * (rho / r).powi(n + 2) - tail * dh) + self.lam_mu * (qp - dh * q_r)
                - dh * self.boundary)
        }
    }

    /// Jump `P_n'(ρ⁺) - P_n'(ρ⁻)` prescribed by the transmission condition at the core.
    pub fn derivative_jump(&self, sol: &RadialSolution) -> f64 {
        -self.lam_mu * self.basis.qp_rho() * (sol.sigma_tilde - sol.sigma_under()) / sol.sigma_under()
    }
}

/// `P_n(r)` on `[0, R]`.
pub fn p_n(sol: &RadialSolution, mu: f64, n: u32, r: f64) -> Result<f64> {
    PressureMode::new(sol, n, mu)?.value(r)
}

/// `P_n'(r)` on `[0, R]`; at `r = ρ` the core-side derivative.
pub fn p_n_prime(sol: &RadialSolution, mu: f64, n: u32, r: f64) -> Result<f64> {
    PressureMode::new(sol, n, mu)?.derivative(r)
}

/// Finite-difference solution of the `Q_n` boundary value problem on a
/// uniform grid, used only to cross-check the closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleGrid {
    pub r: Vec<f64>,
    pub q: Vec<f64>,
    /// Max residual of the discrete equations, boundary rows included.
    pub residual: f64,
}

/// Second-order centered differences for
/// `Q'' + (2/r)Q' - (1 + n(n+1)/r²)Q = 0`, `Q(ρ) = 0`, `Q'(R) + βQ(R) = 1`;
/// the Robin row uses a ghost node. Solved with the Thomas algorithm.
pub fn qn_oracle(sol: &RadialSolution, n: u32, grid_size: usize) -> Result<OracleGrid> {
    if grid_size < 64 {
        return Err(Error::domain(format!("oracle grid needs at least 64 intervals, got {grid_size}")));
    }
    let (rho, outer, beta) = (sol.rho(), sol.outer_radius, sol.beta());
    let m = grid_size;
    let h = (outer - rho) / m as f64;
    let r: Vec<f64> = (0..=m).map(|j| if j == m { outer } else { rho + h * j as f64 }).collect();
    let ell = (n as f64) * (n as f64 + 1.0);

    // Unknowns Q_1..Q_m; rows j = 1..m.
    let mut lower = vec![0.0; m];
    let mut diag = vec![0.0; m];
    let mut upper = vec![0.0; m];
    let mut rhs = vec![0.0; m];
    #[allow(clippy::needless_range_loop)] // j indexes r and the shifted band arrays together
    for j in 1..=m {
        let rj = r[j];
        let a = 1.0 / (h * h) - 1.0 / (rj * h);
        let c = 1.0 / (h * h) + 1.0 / (rj * h);
        let b = -2.0 / (h * h) - (1.0 + ell / (rj * rj));
        let k = j - 1;
        if j < m {
            lower[k] = a;
            diag[k] = b;
            upper[k] = c;
        } else {
            // Q_{m+1} = Q_{m-1} + 2h(1 - βQ_m)
            lower[k] = a + c;
            diag[k] = b - 2.0 * h * beta * c;
            rhs[k] = -2.0 * h * c;
        }
    }
    let q_inner = thomas(&lower, &diag, &upper, &rhs)?;
    let mut q = Vec::with_capacity(m + 1);
    q.push(0.0);
    q.extend_from_slice(&q_inner);

    let mut residual: f64 = 0.0;
    for k in 0..m {
        let mut row = diag[k] * q_inner[k] - rhs[k];
        if k > 0 {
            row += lower[k] * q_inner[k - 1];
        }
        if k + 1 < m {
            row += upper[k] * q_inner[k + 1];
        }
        let scale = diag[k].abs() * q_inner[k].abs().max(1e-300) + rhs[k].abs();
        residual = residual.max(row.abs() / scale);
    }
    Ok(OracleGrid { r, q, residual })
}

fn thomas(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &[f64]) -> Result<Vec<f64>> {
    let m = diag.len();
    let mut c = vec![0.0; m];
    let mut d = vec![0.0; m];
    let mut pivot = diag[0];
    if pivot == 0.0 {
        return Err(Error::Oracle("zero pivot in row 0".into()));
    }
    c[0] = upper[0] / pivot;
    d[0] = rhs[0] / pivot;
    for k in 1..m {
        pivot = diag[k] - lower[k] * c[k - 1];
        if pivot == 0.0 || !pivot.is_finite() {
            return Err(Error::Oracle(format!("singular pivot in row {k}")));
        }
        c[k] = upper[k] / pivot;
        d[k] = (rhs[k] - lower[k] * d[k - 1]) / pivot;
    }
    let mut x = vec![0.0; m];
    x[m - 1] = d[m - 1];
    for k in (0..m - 1).rev() {
        x[k] = d[k] - c[k] * x[k + 1];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::{solve_radius, ModelParams};

    fn golden() -> RadialSolution {
        solve_radius(&ModelParams::new(1.0, 1.0, 0.5).unwrap()).unwrap()
    }

    #[test]
    fn boundary_conditions() {
        let s = golden();
        for n in [0, 1, 2, 7, 40, 200] {
            let b = ModeBasis::new(&s, n).unwrap();
            assert_eq!(b.q(s.rho()).unwrap(), 0.0);
            assert!((b.qp_r() + s.beta() * b.q_r() - 1.0).abs() < 1e-12, "n = {n}");
            assert!(b.q_r() > 0.0 && b.q_r() < 1.0 / (n as f64 / s.outer_radius + s.beta()));
            assert!((b.q_prime(s.outer_radius).unwrap() - b.qp_r()).abs() < 1e-12);
        }
    }

    #[test]
    fn shell_domain() {
        let s = golden();
        assert!(q_n(&s, 3, 0.5).is_err());
        assert!(q_n(&s, 3, s.outer_radius + 1e-6).is_err());
        assert!(p_n(&s, 1.0, 3, -0.1).is_err());
        assert!(p_n(&s, -1.0, 3, 0.5).is_err());
    }

    #[test]
    fn pressure_boundary_value_and_continuity() {
        let s = golden();
        for n in [0u32, 2, 5, 12] {
            let p = PressureMode::new(&s, n, 3.0).unwrap();
            let nf = n as f64;
            let want = -(1.0 - nf * (nf + 1.0) / 2.0) / s.outer_radius.powi(2);
            assert!((p.value(s.outer_radius).unwrap() - want).abs() < 1e-12);
            let rho = s.rho();
            let left = p.value(rho).unwrap();
            let right = p.value(rho * (1.0 + 1e-15)).unwrap();
            assert!((left - right).abs() < 1e-11, "n = {n}");
        }
    }

    #[test]
    fn oracle_tracks_closed_form() {
        let s = golden();
        let g = qn_oracle(&s, 5, 256).unwrap();
        let b = ModeBasis::new(&s, 5).unwrap();
        let err = g.r.iter().zip(&g.q).map(|(&r, &q)| (b.q(r).unwrap() - q).abs()).fold(0.0, f64::max);
        assert!(err < 1e-5, "{err}");
        assert!(g.residual < 1e-10);
        assert!(qn_oracle(&s, 5, 10).is_err());
    }
}
