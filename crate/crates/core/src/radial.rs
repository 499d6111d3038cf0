//! The radially symmetric stationary state.
//!
//! For a necrotic core of radius `ρ`, nutrient supply rate `β` and necrosis
//! threshold `σ̲`, the outer radius `R` is the unique root on `(ρ, ∞)` of
//!
//! ```text
//! f(s) = [k_1(ρ) i_1(s) - i_1(ρ) k_1(s)] + β [k_1(ρ) i_0(s) + i_1(ρ) k_0(s)] - πβ / (2σ̲ρ²)
//! ```
//!
//! and the apoptosis threshold `σ̃` follows from the mass balance
//! `σ̃ (R³ - ρ³) / (3R²) = σ_s'(R)`. The nutrient profile on the living shell
//! is `σ_s(r) = (2/π) σ̲ ρ² [k_1(ρ) i_0(r) + i_1(ρ) k_0(r)]`.

use std::f64::consts::{FRAC_2_PI, PI};

use crate::error::{Error, Result};
use crate::extfloat::ExpFloat;
use crate::specfun::{bessel_adjacent, DEFAULT_ORDER_CAP};

/// One model instance plus the numerical controls of its solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Necrotic core radius `ρ`.
    pub rho: f64,
    /// Nutrient supply rate `β`.
    pub beta: f64,
    /// Necrotic threshold `σ̲`.
    pub sigma_under: f64,
    /// Absolute tolerance on `|f(R)|`.
    pub tol_root: f64,
    /// The bracket search gives up beyond this radius.
    pub r_bracket_max: f64,
    /// Geometric growth factor of the bracket search.
    pub bracket_factor: f64,
    /// Highest Bessel order the spectrum may request.
    pub order_cap: u32,
}

/// `σ̲` closer than this to 1 makes `f(ρ) → 0⁻` and bracketing ill-conditioned.
pub const SIGMA_UNDER_MARGIN: f64 = 1e-12;

impl ModelParams {
    pub const DEFAULT_TOL_ROOT: f64 = 1e-12;
    pub const DEFAULT_BRACKET_FACTOR: f64 = 2.0;

    /// Validated parameters with default tolerances
    /// (`tol_root = 1e-12`, `r_bracket_max = 1e4 ρ`).
    pub fn new(rho: f64, beta: f64, sigma_under: f64) -> Result<Self> {
        let p = ModelParams {
            rho,
            beta,
            sigma_under,
            tol_root: Self::DEFAULT_TOL_ROOT,
            r_bracket_max: 1e4 * rho,
            bracket_factor: Self::DEFAULT_BRACKET_FACTOR,
            order_cap: DEFAULT_ORDER_CAP,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_tol_root(mut self, tol: f64) -> Result<Self> {
        self.tol_root = tol;
        self.validate()?;
        Ok(self)
    }

    pub fn with_bracket_factor(mut self, factor: f64) -> Result<Self> {
        self.bracket_factor = factor;
        self.validate()?;
        Ok(self)
    }

    pub fn with_r_bracket_max(mut self, r_max: f64) -> Result<Self> {
        self.r_bracket_max = r_max;
        self.validate()?;
        Ok(self)
    }

    pub fn with_order_cap(mut self, cap: u32) -> Self {
        self.order_cap = cap;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        if !(self.rho > 0.0 && self.rho.is_finite()) {
            return bad(format!("rho must satisfy rho > 0, got {}", self.rho));
        }
        if !(self.beta > 0.0 && self.beta.is_finite()) {
            return bad(format!("beta must satisfy beta > 0, got {}", self.beta));
        }
        if !(self.sigma_under > 0.0 && self.sigma_under < 1.0) {
            return bad(format!("sigma_under must satisfy 0 < sigma_under < 1, got {}", self.sigma_under));
        }
        if self.sigma_under >= 1.0 - SIGMA_UNDER_MARGIN {
            return bad(format!(
                "sigma_under = {} is within {SIGMA_UNDER_MARGIN:e} of 1; the radius is degenerate (R -> rho)",
                self.sigma_under
            ));
        }
        if !(self.tol_root > 0.0) {
            return bad(format!("tol_root must be positive, got {}", self.tol_root));
        }
        if !(self.r_bracket_max > self.rho) {
            return bad(format!("r_bracket_max must exceed rho, got {} <= {}", self.r_bracket_max, self.rho));
        }
        if !(self.bracket_factor > 1.0 && self.bracket_factor.is_finite()) {
            return bad(format!("bracket_factor must exceed 1, got {}", self.bracket_factor));
        }
        Ok(())
    }

    /// `(2/π) σ̲ ρ²`, the amplitude of the nutrient profile.
    pub fn profile_scale(&self) -> f64 {
        FRAC_2_PI * self.sigma_under * self.rho * self.rho
    }
}

/// Order-0/1 Bessel combinations at `(ρ, r)`:
/// `odd = i_1(r) k_1(ρ) - i_1(ρ) k_1(r)` and `even = i_0(r) k_1(ρ) + i_1(ρ) k_0(r)`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LowOrder {
    pub odd: f64,
    pub even: f64,
}

impl LowOrder {
    pub fn at(rho: f64, r: f64) -> Self {
        let [_, rho1] = bessel_adjacent(0, rho, 1).expect("rho > 0 checked by caller");
        let [r0, r1] = bessel_adjacent(0, r, 1).expect("r > 0 checked by caller");
        let grow = ExpFloat::exp(r - rho);
        let decay = ExpFloat::exp(rho - r);
        let odd = grow * (r1.i_hat() * rho1.k_hat()) - decay * (rho1.i_hat() * r1.k_hat());
        let even = grow * (r0.i_hat() * rho1.k_hat()) + decay * (rho1.i_hat() * r0.k_hat());
        LowOrder { odd: odd.to_f64(), even: even.to_f64() }
    }
}

/// `f(s)` and `f'(s)` of the radius equation, for `s >= ρ`.
pub fn stationarity_f(params: &ModelParams, s: f64) -> Result<(f64, f64)> {
    if !(s >= params.rho) {
        return Err(Error::domain(format!("stationarity function needs s >= rho, got s = {s}")));
    }
    let lo = LowOrder::at(params.rho, s);
    let rho2 = params.rho * params.rho;
    let f = lo.odd + params.beta * lo.even - PI * params.beta / (2.0 * params.sigma_under * rho2);
    let fp = lo.even + (params.beta - 2.0 / s) * lo.odd;
    Ok((f, fp))
}

/// `λ = (σ_s'' + β σ_s')(R)`, from the core radius, outer radius and
/// model constants.
pub fn lambda_coeff(rho: f64, outer_radius: f64, beta: f64, sigma_under: f64) -> Result<f64> {
    if !(rho > 0.0 && rho < outer_radius) {
        return Err(Error::domain(format!("lambda needs 0 < rho < R, got rho = {rho}, R = {outer_radius}")));
    }
    let lo = LowOrder::at(rho, outer_radius);
    Ok(FRAC_2_PI * sigma_under * rho * rho * (lo.even + (beta - 2.0 / outer_radius) * lo.odd))
}

/// The solved radially symmetric stationary state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialSolution {
    pub params: ModelParams,
    /// Outer radius `R`.
    pub outer_radius: f64,
    /// Apoptosis threshold `σ̃`.
    pub sigma_tilde: f64,
    /// `σ_s(R)`.
    pub sigma_r: f64,
    /// `σ_s'(R)`.
    pub sigma_r_prime: f64,
    /// Linearization coefficient `λ`.
    pub lambda: f64,
    /// `|f(R)|` at the accepted root.
    pub f_residual: f64,
    /// Bisection/Newton iterations spent.
    pub iterations: u32,
    /// Order-0/1 kernels at `(ρ, R)`: `odd` = `i_1(R)k_1(ρ) - i_1(ρ)k_1(R)`,
    /// `even` = `i_0(R)k_1(ρ) + i_1(ρ)k_0(R)`.
    pub(crate) kernels_r: (f64, f64),
}

/// Pass/fail margins of the ordering `σ̲ < σ̃ < σ_s(R) < 1` and of the two
/// auxiliary inequalities it reduces to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequalityReport {
    /// `σ̃ - σ̲`
    pub tilde_minus_under: f64,
    /// `σ_s(R) - σ̃`
    pub surface_minus_tilde: f64,
    /// `1 - σ_s(R)`
    pub one_minus_surface: f64,
    /// `3(R-ρ)cosh(R-ρ) + 3(Rρ-1)sinh(R-ρ) - R³ + ρ³`
    pub g_at_r: f64,
    /// `(ρ+1)(R³-3R²+3R-ρ³)e^{2(R-ρ)} + (ρ-1)(R³+3R²+3R-ρ³)`
    pub h_at_r: f64,
}

impl InequalityReport {
    pub fn margins(&self) -> [(&'static str, f64); 5] {
        [
            ("sigma_tilde > sigma_under", self.tilde_minus_under),
            ("sigma_R > sigma_tilde", self.surface_minus_tilde),
            ("sigma_R < 1", self.one_minus_surface),
            ("g(R) > 0", self.g_at_r),
            ("h(R) > 0", self.h_at_r),
        ]
    }

    pub fn all_pass(&self) -> bool {
        self.margins().iter().all(|(_, m)| *m > 0.0)
    }
}

/// `g(s) = 3(s-ρ)cosh(s-ρ) + 3(sρ-1)sinh(s-ρ) - s³ + ρ³`; positive on `s > ρ`.
pub fn proof_g(rho: f64, s: f64) -> f64 {
    let d = s - rho;
    3.0 * d * d.cosh() + 3.0 * (s * rho - 1.0) * d.sinh() - s.powi(3) + rho.powi(3)
}

/// `g'(s) = 3s{ρ[cosh(s-ρ) - 1] + [sinh(s-ρ) - (s-ρ)]}`.
pub fn proof_g_prime(rho: f64, s: f64) -> f64 {
    let d = s - rho;
    3.0 * s * (rho * (d.cosh() - 1.0) + (d.sinh() - d))
}

/// `h(s) = (ρ+1)(s³-3s²+3s-ρ³)e^{2(s-ρ)} + (ρ-1)(s³+3s²+3s-ρ³)`; positive on `s > ρ`.
pub fn proof_h(rho: f64, s: f64) -> f64 {
    let e = (2.0 * (s - rho)).exp();
    let r3 = rho.powi(3);
    (rho + 1.0) * (s.powi(3) - 3.0 * s * s + 3.0 * s - r3) * e + (rho - 1.0) * (s.powi(3) + 3.0 * s * s + 3.0 * s - r3)
}

/// `[h', h'', h''', h⁗]` at `s` in closed form.
pub fn proof_h_derivatives(rho: f64, s: f64) -> [f64; 4] {
    let e = (2.0 * (s - rho)).exp();
    let r3 = rho.powi(3);
    let (s2, s3) = (s * s, s.powi(3));
    [
        (rho + 1.0) * (2.0 * s3 - 3.0 * s2 - 2.0 * r3 + 3.0) * e + 3.0 * (rho - 1.0) * (s + 1.0).powi(2),
        2.0 * (rho + 1.0) * (2.0 * s3 - 3.0 * s - 2.0 * r3 + 3.0) * e + 6.0 * (rho - 1.0) * (s + 1.0),
        2.0 * (rho + 1.0) * (4.0 * s3 + 6.0 * s2 - 6.0 * s - 4.0 * r3 + 3.0) * e + 6.0 * (rho - 1.0),
        16.0 * (rho + 1.0) * (s3 + 3.0 * s2 - r3) * e,
    ]
}

/// Finds `R` with bracket-by-growth, bisection to width `1e-8 ρ`, then
/// Newton with the exact `f'` kept inside the bracket.
pub fn solve_radius(params: &ModelParams) -> Result<RadialSolution> {
    params.validate()?;
    let rho = params.rho;
    let f = |s: f64| stationarity_f(params, s);

    let (f_rho, _) = f(rho)?;
    if !(f_rho < 0.0) {
        return Err(Error::Internal(format!("f(rho) = {f_rho} is not negative")));
    }

    let mut iterations = 0u32;
    let mut lo = rho;
    let mut hi = rho * params.bracket_factor;
    loop {
        if hi > params.r_bracket_max {
            let (f_last, _) = f(params.r_bracket_max)?;
            return Err(Error::NoRoot { bracket_max: params.r_bracket_max, f_last });
        }
        let (fh, _) = f(hi)?;
        iterations += 1;
        if fh > 0.0 {
            break;
        }
        if fh == 0.0 {
            return RadialSolution::from_radius(params, hi, iterations);
        }
        lo = hi;
        hi *= params.bracket_factor;
    }

    while hi - lo > 1e-8 * rho {
        let mid = 0.5 * (lo + hi);
        let (fm, _) = f(mid)?;
        iterations += 1;
        if fm < 0.0 {
            lo = mid;
        } else if fm > 0.0 {
            hi = mid;
        } else {
            return RadialSolution::from_radius(params, mid, iterations);
        }
    }

    let mut x = 0.5 * (lo + hi);
    let mut best = (x, f64::INFINITY);
    for _ in 0..60 {
        let (fx, fpx) = f(x)?;
        iterations += 1;
        if fx.abs() < best.1 {
            best = (x, fx.abs());
        }
        if fx.abs() <= params.tol_root {
            break;
        }
        if fx < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let mut next = x - fx / fpx;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if next == x || hi - lo <= 4.0 * f64::EPSILON * x {
            break;
        }
        x = next;
    }
    let (root, residual) = best;
    if residual > params.tol_root {
        return Err(Error::Internal(format!(
            "Newton stalled at R = {root} with |f(R)| = {residual:e} > tol_root = {:e}",
            params.tol_root
        )));
    }
    RadialSolution::from_radius(params, root, iterations)
}

impl RadialSolution {
    /// Derives `σ̃`, `σ_s(R)`, `λ` for a given outer radius and checks the
    /// stationary-state invariants.
    pub fn from_radius(params: &ModelParams, outer_radius: f64, iterations: u32) -> Result<Self> {
        let rho = params.rho;
        let (f_r, _) = stationarity_f(params, outer_radius)?;
        let lo = LowOrder::at(rho, outer_radius);
        let c = params.profile_scale();
        let sigma_r_prime = c * lo.odd;
        let r3 = outer_radius.powi(3);
        let sigma_tilde = 3.0 * outer_radius * outer_radius / (r3 - rho.powi(3)) * sigma_r_prime;
        let sigma_r = c * lo.even;
        let lambda = c * (lo.even + (params.beta - 2.0 / outer_radius) * lo.odd);
        let sol = RadialSolution {
            params: *params,
            outer_radius,
            sigma_tilde,
            sigma_r,
            sigma_r_prime,
            lambda,
            f_residual: f_r.abs(),
            iterations,
            kernels_r: (lo.odd, lo.even),
        };
        if !(outer_radius > rho && outer_radius.is_finite()) {
            return Err(Error::Internal(format!("outer radius {outer_radius} not in (rho, inf)")));
        }
        let chain = sol.theorem31_inequalities();
        if chain.tilde_minus_under <= 0.0 || chain.surface_minus_tilde <= 0.0 || chain.one_minus_surface <= 0.0 {
            return Err(Error::Internal(format!(
                "ordering sigma_under < sigma_tilde < sigma_R < 1 violated: {} {} {} {}",
                params.sigma_under, sigma_tilde, sigma_r, 1.0
            )));
        }
        Ok(sol)
    }

    pub fn rho(&self) -> f64 {
        self.params.rho
    }

    pub fn beta(&self) -> f64 {
        self.params.beta
    }

    pub fn sigma_under(&self) -> f64 {
        self.params.sigma_under
    }

    /// `σ_s(R) - σ̃`, the limit of `B_n` and the natural scale of the spectrum.
    pub fn spectral_gap(&self) -> f64 {
        self.sigma_r - self.sigma_tilde
    }

    /// `λ ≤ 0` never occurs in the proved regime; instances where it does are flagged.
    pub fn lambda_flagged(&self) -> bool {
        !(self.lambda > 0.0)
    }

    fn check_r(&self, r: f64) -> Result<()> {
        if !(r >= 0.0 && r <= self.outer_radius) {
            return Err(Error::domain(format!("r = {r} outside the tumor [0, R = {}]", self.outer_radius)));
        }
        Ok(())
    }

    fn check_hat(&self, r: f64) -> Result<()> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::domain(format!("extended profiles need r > 0, got {r}")));
        }
        Ok(())
    }

    /// Shell formula `(2/π)σ̲ρ²[k_1(ρ)i_0(r) + i_1(ρ)k_0(r)]` on all of `r > 0`.
    pub fn sigma_hat(&self, r: f64) -> Result<f64> {
        self.check_hat(r)?;
        Ok(self.params.profile_scale() * LowOrder::at(self.rho(), r).even)
    }

    pub fn sigma_hat_prime(&self, r: f64) -> Result<f64> {
        self.check_hat(r)?;
        Ok(self.params.profile_scale() * LowOrder::at(self.rho(), r).odd)
    }

    pub fn sigma_hat_second(&self, r: f64) -> Result<f64> {
        self.check_hat(r)?;
        let lo = LowOrder::at(self.rho(), r);
        Ok(self.params.profile_scale() * (lo.even - 2.0 / r * lo.odd))
    }

    /// Nutrient profile: `σ̲` in the core, the shell formula on `(ρ, R]`.
    pub fn sigma_s(&self, r: f64) -> Result<f64> {
        self.check_r(r)?;
        if r <= self.rho() {
            Ok(self.sigma_under())
        } else {
            self.sigma_hat(r)
        }
    }

    pub fn sigma_s_prime(&self, r: f64) -> Result<f64> {
        self.check_r(r)?;
        if r <= self.rho() {
            Ok(0.0)
        } else {
            self.sigma_hat_prime(r)
        }
    }

    /// Pressure formula on all of `r > 0`, for proliferation intensity `μ`.
    pub fn p_hat(&self, mu: f64, r: f64) -> Result<f64> {
        check_mu(mu)?;
        let (rho, big_r, st) = (self.rho(), self.outer_radius, self.sigma_tilde);
        let s = self.sigma_hat(r)?;
        Ok(-mu * (s - self.sigma_r)
            + mu * st / 6.0 * (r * r - big_r * big_r)
            + mu * st * rho.powi(3) / 3.0 * (1.0 / r - 1.0 / big_r)
            + 1.0 / big_r)
    }

    pub fn p_hat_prime(&self, mu: f64, r: f64) -> Result<f64> {
        check_mu(mu)?;
        let st = self.sigma_tilde;
        Ok(-mu * self.sigma_hat_prime(r)? + mu * st * r / 3.0 - mu * st * self.rho().powi(3) / (3.0 * r * r))
    }

    pub fn p_hat_second(&self, mu: f64, r: f64) -> Result<f64> {
        check_mu(mu)?;
        let st = self.sigma_tilde;
        Ok(-mu * self.sigma_hat_second(r)? + mu * st / 3.0 + 2.0 * mu * st * self.rho().powi(3) / (3.0 * r.powi(3)))
    }

    /// Pressure profile: constant in the core, continuous at `ρ`.
    pub fn p_s(&self, mu: f64, r: f64) -> Result<f64> {
        self.check_r(r)?;
        self.p_hat(mu, r.max(self.rho()))
    }

    pub fn p_s_prime(&self, mu: f64, r: f64) -> Result<f64> {
        self.check_r(r)?;
        if r <= self.rho() {
            check_mu(mu)?;
            Ok(0.0)
        } else {
            self.p_hat_prime(mu, r)
        }
    }

    pub fn theorem31_inequalities(&self) -> InequalityReport {
        let (rho, r) = (self.rho(), self.outer_radius);
        InequalityReport {
            tilde_minus_under: self.sigma_tilde - self.sigma_under(),
            surface_minus_tilde: self.sigma_r - self.sigma_tilde,
            one_minus_surface: 1.0 - self.sigma_r,
            g_at_r: proof_g(rho, r),
            h_at_r: proof_h(rho, r),
        }
    }
}

fn check_mu(mu: f64) -> Result<()> {
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(Error::domain(format!("mu must be positive, got {mu}")));
    }
    Ok(())
}
