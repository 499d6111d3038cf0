//! Spectrum coefficients `A_n`, `B_n`, bifurcation values `μ_n` and the
//! threshold indices `n*`, `n**`.

use std::f64::consts::FRAC_2_PI;

use super::mode::ModeBasis;
use super::proof;
use crate::error::{Error, Result};
use crate::extfloat::ExpFloat;
use crate::radial::RadialSolution;
use crate::verify::Check;

/// Per-mode quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeData {
    pub n: u32,
    /// `Q_n(R)`
    pub q_r: f64,
    /// `Q_n'(ρ)`
    pub qp_rho: f64,
    /// `Q_n'(R)`
    pub qp_r: f64,
    /// `Q_n'(R) - (n/R) Q_n(R)`, evaluated without the subtraction.
    pub qp_r_shifted: f64,
    pub a_n: f64,
    pub b_n: f64,
    /// `B_n` through the `M_{1,n} + β M_{2,n}` decomposition.
    pub b_n_alt: f64,
    /// `A_n / B_n`, absent when `B_n` vanishes to tolerance.
    pub mu_n: Option<f64>,
}

/// `A_n = (n/R³)(n(n+1)/2 - 1)`.
pub fn a_coeff(outer: f64, n: u32) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let nf = n as f64;
    nf / outer.powi(3) * (nf * (nf + 1.0) / 2.0 - 1.0)
}

/// `|σ_s(R) - σ̃|`, the scale for zero tests on `B_n`.
pub fn spectral_scale(sol: &RadialSolution) -> f64 {
    sol.spectral_gap().abs()
}

struct Shared {
    j: f64,
    k: f64,
    cc: f64,
}

impl Shared {
    fn new(sol: &RadialSolution) -> Self {
        let (k, j) = sol.kernels_r;
        let (rho, r) = (sol.rho(), sol.outer_radius);
        Shared { j, k, cc: 3.0 * r * r / (r.powi(3) - rho.powi(3)) }
    }
}

/// `(H_n, W_n, M_{1,n}, M_{2,n})` with `W_n = M_{1,n} + β M_{2,n}` and
/// `H_n = W_n / D_n`.
pub fn m_decomposition(sol: &RadialSolution, n: u32) -> Result<(f64, f64, f64, f64)> {
    let basis = ModeBasis::new(sol, n)?;
    let (h, w, m1, m2) = decompose(sol, &basis);
    Ok((h, w.to_f64(), m1.to_f64(), m2.to_f64()))
}

fn decompose(sol: &RadialSolution, basis: &ModeBasis) -> (f64, ExpFloat, ExpFloat, ExpFloat) {
    let Shared { j, k, cc } = Shared::new(sol);
    let (rho, r) = (sol.rho(), sol.outer_radius);
    let (r3, rho3) = (r.powi(3), rho.powi(3));
    let t = (rho / r).powi(basis.n as i32 + 2);
    let x = basis.k1;
    let y = basis.k2;
    let nf = basis.n as f64;

    let m1 = x * (nf / r * (j - cc * k))
        + (y * (-(r3 + 2.0 * rho3)) + (3.0 * r3 * t * j - 6.0 * r * r * t * k)) * (k / (r * (r3 - rho3)));
    let m2 = x * (j - cc * k) - (y - cc * t * k) * k;
    let w = m1 + m2 * sol.beta();
    (w.ratio(basis.denom), w, m1, m2)
}

fn coeffs_from_basis(sol: &RadialSolution, basis: &ModeBasis) -> ModeData {
    let n = basis.n;
    let rho = sol.rho();
    let (q_r, qp_rho, qp_r_shifted) = (basis.q_r(), basis.qp_rho(), basis.qp_r_shifted());
    let t = (rho / sol.outer_radius).powi(n as i32 + 2);
    let core = sol.sigma_tilde / sol.sigma_under() * t * qp_rho;
    let b_n = sol.spectral_gap() - sol.lambda * (qp_r_shifted - core);
    let (h, ..) = decompose(sol, basis);
    let b_n_alt = FRAC_2_PI * sol.sigma_under() * rho * rho * h;
    let a_n = a_coeff(sol.outer_radius, n);

    let magnitude = sol.sigma_r.abs() + sol.sigma_tilde.abs() + sol.lambda.abs() * (qp_r_shifted.abs() + core.abs());
    let floor = (1e-13 * spectral_scale(sol)).max(64.0 * f64::EPSILON * magnitude);
    let mu_n = if b_n.abs() > floor { Some(a_n / b_n + 0.0) } else { None };
    ModeData { n, q_r, qp_rho, qp_r: basis.qp_r(), qp_r_shifted, a_n, b_n, b_n_alt, mu_n }
}

/// Mode data for one `n`.
pub fn spectrum_coeffs(sol: &RadialSolution, n: u32) -> Result<ModeData> {
    let basis = ModeBasis::new(sol, n)?;
    Ok(coeffs_from_basis(sol, &basis))
}

/// Mode data for `n = 0..=n_max`.
pub fn spectrum_table(sol: &RadialSolution, n_max: u32) -> Result<Vec<ModeData>> {
    (0..=n_max).map(|n| spectrum_coeffs(sol, n)).collect()
}

/// Result of the bifurcation scan over `n = 0..=n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct BifurcationReport {
    pub modes: Vec<ModeData>,
    pub n_star: u32,
    pub n_double_star: u32,
    /// `max μ_n` over `n < n*` with `B_n ≠ 0`; `None` if no such `n`.
    pub excluded_max: Option<f64>,
    pub even_points: Vec<(u32, f64)>,
    pub n_max: u32,
    pub window: u32,
    /// `n*` lies within 10 modes of `n_max`; monotonicity is barely certified.
    pub near_edge: bool,
}

impl BifurcationReport {
    pub fn mode(&self, n: u32) -> Option<&ModeData> {
        self.modes.get(n as usize)
    }

    pub fn mu_of(&self, n: u32) -> Option<f64> {
        self.even_points.iter().find(|(m, _)| *m == n).map(|(_, mu)| *mu)
    }
}

/// Scans `n = 0..=n_max` for `n*` and `n**`. Monotonicity of `μ_n` is
/// certified only on the computed window; at least `window` modes past `n*`
/// are required.
pub fn bifurcation_report(sol: &RadialSolution, n_max: u32, window: u32) -> Result<BifurcationReport> {
    if window < 8 || n_max < window {
        return Err(Error::domain(format!(
            "bifurcation scan needs n_max >= window >= 8, got n_max = {n_max}, window = {window}"
        )));
    }
    let modes = spectrum_table(sol, n_max)?;
    let inconclusive = |candidate: u32| Error::Inconclusive {
        n_star_candidate: candidate,
        n_max,
        window,
        b_values: modes.iter().map(|m| m.b_n).collect(),
    };

    let positive = |m: &ModeData| m.mu_n.is_some() && m.b_n > 0.0;
    let mut n1 = n_max + 1;
    while n1 > 0 && positive(&modes[n1 as usize - 1]) {
        n1 -= 1;
    }
    if n1 > n_max {
        return Err(inconclusive(n_max));
    }
    let mu = |n: u32| modes[n as usize].mu_n.expect("positive B_n has mu_n");
    let mut n_star = n_max;
    while n_star > n1 && mu(n_star - 1) < mu(n_star) {
        n_star -= 1;
    }
    if n_max - n_star < window {
        return Err(inconclusive(n_star));
    }

    let excluded_max = modes[..n_star as usize]
        .iter()
        .filter_map(|m| m.mu_n)
        .fold(None, |acc: Option<f64>, x| Some(acc.map_or(x, |a| a.max(x))));
    let n_double_star = match excluded_max {
        None => n_star,
        Some(ex) => (n_star..=n_max).find(|&n| mu(n) > ex).ok_or_else(|| inconclusive(n_star))?,
    };
    let even_points = (n_double_star..=n_max).filter(|n| n % 2 == 0).map(|n| (n, mu(n))).collect();
    Ok(BifurcationReport {
        modes,
        n_star,
        n_double_star,
        excluded_max,
        even_points,
        n_max,
        window,
        near_edge: n_max - n_star < 10,
    })
}

/// `1 / (2R³(σ_s(R) - σ̃))`, the limit of `μ_n / n³`.
pub fn mu_cubic_limit(sol: &RadialSolution) -> f64 {
    1.0 / (2.0 * sol.outer_radius.powi(3) * sol.spectral_gap())
}

fn strictly(values: &[f64], increasing: bool) -> Option<usize> {
    values.windows(2).position(|w| if increasing { !(w[1] > w[0]) } else { !(w[1] < w[0]) })
}

fn monotone_check(name: &str, values: &[f64], increasing: bool, positive: bool) -> Check {
    let bad_sign = if positive { values.iter().position(|v| !(*v > 0.0)) } else { None };
    let bad_order = strictly(values, increasing);
    let min_gap =
        values.windows(2).map(|w| if increasing { w[1] - w[0] } else { w[0] - w[1] }).fold(f64::INFINITY, f64::min);
    let detail = match (bad_sign, bad_order) {
        (Some(n), _) => format!("non-positive value {} at n = {n}", values[n]),
        (None, Some(n)) => format!("order broken between n = {n} and n = {}", n + 1),
        _ => String::new(),
    };
    Check::new(name, bad_sign.is_none() && bad_order.is_none(), min_gap, 0.0, detail)
}

/// The monotonicity, limit and sign claims about `Q_n`, `B_n` and the
/// `M` decomposition, evaluated for `n = 0..=n_max`.
pub fn lemma_checks(sol: &RadialSolution, n_max: u32) -> Result<Vec<Check>> {
    if n_max < 16 {
        return Err(Error::domain(format!("lemma checks need n_max >= 16, got {n_max}")));
    }
    let modes = spectrum_table(sol, n_max)?;
    let r = sol.outer_radius;
    let scale = spectral_scale(sol);
    let col = |f: fn(&ModeData) -> f64| modes.iter().map(f).collect::<Vec<f64>>();
    let last = modes[n_max as usize];
    let mut out = Vec::new();

    out.push(monotone_check("qp_rho positive decreasing", &col(|m| m.qp_rho), false, true));
    out.push(monotone_check("qp_R positive increasing", &col(|m| m.qp_r), true, true));
    out.push(monotone_check("Q_R decreasing", &col(|m| m.q_r), false, true));
    let dist = col(|m| (m.qp_r - 1.0).abs());
    out.push(monotone_check("|qp_R - 1| decreasing", &dist, false, true));
    out.push(Check::new("|qp_R - 1| < 0.05 at n_max", dist[n_max as usize] < 0.05, dist[n_max as usize], 0.05, ""));

    let shifted = col(|m| m.qp_r_shifted / m.q_r);
    out.push(monotone_check("qp_R/Q_R - n/R positive decreasing", &shifted, false, true));
    let tail = shifted[n_max as usize];
    out.push(Check::new("qp_R/Q_R - n/R -> 0", tail <= r / n_max as f64, tail, r / n_max as f64, ""));

    let b_err = (last.b_n - sol.spectral_gap()).abs();
    out.push(Check::new("B_n -> sigma_R - sigma_tilde", b_err < 0.05 * scale, b_err, 0.05 * scale, ""));
    out.push(Check::new("B_0 < 0", modes[0].b_n < 0.0, modes[0].b_n, 0.0, ""));
    out.push(Check::new("|B_1| ~ 0", modes[1].b_n.abs() <= 1e-10 * scale, modes[1].b_n.abs(), 1e-10 * scale, ""));

    // M_{i,n} enter B_n through (2/π)σ̲ρ² M / D_n; compare them on that scale.
    let c = FRAC_2_PI * sol.sigma_under() * sol.rho().powi(2);
    let b1 = ModeBasis::new(sol, 1)?;
    let (_, _, m11, m21) = decompose(sol, &b1);
    let m11 = (c * m11.ratio(b1.denom)).abs();
    let m21 = (c * m21.ratio(b1.denom)).abs();
    out.push(Check::new("M_1,1 ~ 0", m11 <= 1e-10 * scale, m11, 1e-10 * scale, ""));
    out.push(Check::new("M_2,1 ~ 0", m21 <= 1e-10 * scale, m21, 1e-10 * scale, ""));
    let (_, _, m10, m20) = m_decomposition(sol, 0)?;
    out.push(Check::new("M_1,0 < 0", m10 < 0.0, m10, 0.0, ""));
    out.push(Check::new("M_2,0 < 0", m20 < 0.0, m20, 0.0, ""));
    Ok(out)
}

/// `π²/(8R⁴ρ³(R³-ρ³)) η(ρ)`, the closed form of `M_{2,0}`.
pub fn m20_closed_form(sol: &RadialSolution) -> f64 {
    let (rho, r) = (sol.rho(), sol.outer_radius);
    let pi2 = std::f64::consts::PI.powi(2);
    pi2 / (8.0 * r.powi(4) * rho.powi(3) * (r.powi(3) - rho.powi(3))) * proof::eta(r, rho)
}

/// Rounding floor of [`m20_closed_form`] relative to its value.
pub fn m20_closed_form_tolerance(sol: &RadialSolution) -> f64 {
    let (rho, r) = (sol.rho(), sol.outer_radius);
    64.0 * f64::EPSILON * proof::eta_magnitude(r, rho) / proof::eta(r, rho).abs()
}

/// Rounding floor of [`m10_closed_form`] relative to its value.
pub fn m10_closed_form_tolerance(sol: &RadialSolution) -> f64 {
    let (rho, r) = (sol.rho(), sol.outer_radius);
    64.0 * f64::EPSILON * proof::xi_magnitude(r, rho) / proof::xi(r, rho).abs()
}

/// `ξ(ρ)` scaled into `M_{1,0}`.
pub fn m10_closed_form(sol: &RadialSolution) -> f64 {
    let (rho, r) = (sol.rho(), sol.outer_radius);
    let (k, _) = sol.kernels_r;
    k / (r * (r.powi(3) - rho.powi(3))) * proof::xi(r, rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::{solve_radius, ModelParams};

    fn golden() -> RadialSolution {
        solve_radius(&ModelParams::new(1.0, 1.0, 0.5).unwrap()).unwrap()
    }

    #[test]
    fn sign_ladder() {
        let s = golden();
        let m0 = spectrum_coeffs(&s, 0).unwrap();
        let m1 = spectrum_coeffs(&s, 1).unwrap();
        let m2 = spectrum_coeffs(&s, 2).unwrap();
        assert_eq!(m0.a_n, 0.0);
        assert_eq!(m1.a_n, 0.0);
        assert!(m0.b_n < 0.0);
        assert!(m1.b_n.abs() <= 1e-10 * spectral_scale(&s));
        assert!(m1.mu_n.is_none());
        assert!((m2.a_n - 4.0 / s.outer_radius.powi(3)).abs() < 1e-15);
        assert!(m2.b_n > 0.0);
    }

    #[test]
    fn dual_formula() {
        let s = golden();
        for n in 0..=64 {
            let m = spectrum_coeffs(&s, n).unwrap();
            assert!((m.b_n - m.b_n_alt).abs() <= 1e-9 * m.b_n.abs().max(1.0), "n = {n}");
        }
    }

    #[test]
    fn m_closed_forms() {
        let s = golden();
        let (_, w, m1, m2) = m_decomposition(&s, 0).unwrap();
        assert!((w - (m1 + s.beta() * m2)).abs() <= 1e-11 * w.abs());
        assert!(((m2 - m20_closed_form(&s)) / m2).abs() < 1e-9);
        assert!(((m1 - m10_closed_form(&s)) / m1).abs() < 1e-9);
    }

    #[test]
    fn golden_report() {
        let s = golden();
        let rep = bifurcation_report(&s, 64, 16).unwrap();
        assert_eq!(rep.n_star, 2);
        assert!(rep.even_points.windows(2).all(|w| w[1].1 > w[0].1));
        assert!(bifurcation_report(&s, 64, 4).is_err());
        assert!(bifurcation_report(&s, 10, 16).is_err());
    }

    #[test]
    fn lemma_suite_golden() {
        let s = golden();
        for c in lemma_checks(&s, 64).unwrap() {
            assert!(c.passed, "{c:?}");
        }
    }
}
