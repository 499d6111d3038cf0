//! Deterministic CSV and JSON writers.
//!
//! Reals are written with 17 significant digits so values round-trip
//! exactly; JSON objects keep insertion order so identical inputs give
//! byte-identical files.

use std::fmt::Write as _;

use crate::branch::BranchShape;
use crate::error::Result;
use crate::radial::RadialSolution;
use crate::specfun::BesselEval;
use crate::spectrum::{BifurcationReport, ModeData};
use crate::verify::Check;

/// 17 significant digits, scientific notation. Non-finite values become
/// `NaN`/`inf`; `-0` is written as `0`.
pub fn fmt_real(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

/// A minimal ordered JSON tree.
#[derive(Debug, Clone, PartialEq)]
pub enum Json {
    Null,
    Bool(bool),
    Int(i64),
    Real(f64),
    Str(String),
    Array(Vec<Json>),
    Object(Vec<(String, Json)>),
}

impl Json {
    pub fn object<K: Into<String>>(pairs: impl IntoIterator<Item = (K, Json)>) -> Json {
        Json::Object(pairs.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }

    pub fn opt_real(x: Option<f64>) -> Json {
        x.map_or(Json::Null, Json::Real)
    }

    /// Two-space indented rendering with a trailing newline.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write(&mut out, 0);
        out.push('\n');
        out
    }

    fn write(&self, out: &mut String, depth: usize) {
        match self {
            Json::Null => out.push_str("null"),
            Json::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Json::Int(i) => {
                let _ = write!(out, "{i}");
            }
            Json::Real(x) if x.is_finite() => out.push_str(&fmt_real(*x)),
            Json::Real(_) => out.push_str("null"),
            Json::Str(s) => write_str(out, s),
            Json::Array(items) if items.is_empty() => out.push_str("[]"),
            Json::Object(items) if items.is_empty() => out.push_str("{}"),
            Json::Array(items) => {
                out.push_str("[\n");
                for (i, v) in items.iter().enumerate() {
                    indent(out, depth + 1);
                    v.write(out, depth + 1);
                    out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
                }
                indent(out, depth);
                out.push(']');
            }
            Json::Object(items) => {
                out.push_str("{\n");
                for (i, (k, v)) in items.iter().enumerate() {
                    indent(out, depth + 1);
                    write_str(out, k);
                    out.push_str(": ");
                    v.write(out, depth + 1);
                    out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
                }
                indent(out, depth);
                out.push('}');
            }
        }
    }
}

fn indent(out: &mut String, depth: usize) {
    for _ in 0..depth {
        out.push_str("  ");
    }
}

fn write_str(out: &mut String, s: &str) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

fn csv(header: &str, rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// `{rho, beta, sigma_under, R, sigma_tilde, sigma_R, lambda, f_residual}`.
pub fn summary_json(sol: &RadialSolution) -> Json {
    Json::object([
        ("rho", Json::Real(sol.rho())),
        ("beta", Json::Real(sol.beta())),
        ("sigma_under", Json::Real(sol.sigma_under())),
        ("R", Json::Real(sol.outer_radius)),
        ("sigma_tilde", Json::Real(sol.sigma_tilde)),
        ("sigma_R", Json::Real(sol.sigma_r)),
        ("lambda", Json::Real(sol.lambda)),
        ("f_residual", Json::Real(sol.f_residual)),
    ])
}

/// `r,sigma_s,p_s` on `points` uniformly spaced radii in `[0, R]`.
pub fn profile_csv(sol: &RadialSolution, mu: f64, points: usize) -> Result<String> {
    let points = points.max(2);
    let mut rows = Vec::with_capacity(points);
    for i in 0..points {
        let r = if i + 1 == points { sol.outer_radius } else { sol.outer_radius * i as f64 / (points - 1) as f64 };
        rows.push(vec![fmt_real(r), fmt_real(sol.sigma_s(r)?), fmt_real(sol.p_s(mu, r)?)]);
    }
    Ok(csv("r,sigma_s,p_s", rows))
}

/// `n,A_n,B_n,mu_n,Q_n_R,Qp_n_rho,Qp_n_R`, `mu_n` blank when absent.
pub fn spectrum_csv(modes: &[ModeData]) -> String {
    csv(
        "n,A_n,B_n,mu_n,Q_n_R,Qp_n_rho,Qp_n_R",
        modes.iter().map(|m| {
            vec![
                m.n.to_string(),
                fmt_real(m.a_n),
                fmt_real(m.b_n),
                m.mu_n.map(fmt_real).unwrap_or_default(),
                fmt_real(m.q_r),
                fmt_real(m.qp_rho),
                fmt_real(m.qp_r),
            ]
        }),
    )
}

/// `{n_star, n_double_star, excluded_max, even_points, n_max, window}`.
pub fn report_json(rep: &BifurcationReport) -> Json {
    let points = rep
        .even_points
        .iter()
        .map(|&(n, mu)| Json::object([("n", Json::Int(n as i64)), ("mu_n", Json::Real(mu))]))
        .collect();
    Json::object([
        ("n_star", Json::Int(rep.n_star as i64)),
        ("n_double_star", Json::Int(rep.n_double_star as i64)),
        ("excluded_max", Json::opt_real(rep.excluded_max)),
        ("even_points", Json::Array(points)),
        ("n_max", Json::Int(rep.n_max as i64)),
        ("window", Json::Int(rep.window as i64)),
    ])
}

/// `theta,r_outer,r_inner`.
pub fn shape_csv(shape: &BranchShape) -> String {
    csv(
        "theta,r_outer,r_inner",
        (0..shape.theta.len())
            .map(|j| vec![fmt_real(shape.theta[j]), fmt_real(shape.outer[j]), fmt_real(shape.inner[j])]),
    )
}

/// `{n, mu_n, epsilon, t_coeff, expansion_order}`.
pub fn branch_json(shape: &BranchShape) -> Json {
    Json::object([
        ("n", Json::Int(shape.n as i64)),
        ("mu_n", Json::Real(shape.mu_n)),
        ("epsilon", Json::Real(shape.epsilon)),
        ("t_coeff", Json::Real(shape.t_coeff)),
        ("expansion_order", Json::Int(1)),
    ])
}

/// `r,theta,sigma1,p1`.
pub fn field_csv(rows: &[[f64; 4]]) -> String {
    csv("r,theta,sigma1,p1", rows.iter().map(|row| row.iter().map(|&x| fmt_real(x)).collect()))
}

/// `{passed, failures, checks: [{name, passed, measured, threshold, detail}]}`.
pub fn checks_json(checks: &[Check]) -> Json {
    let items = checks
        .iter()
        .map(|c| {
            Json::object([
                ("name", Json::Str(c.name.clone())),
                ("passed", Json::Bool(c.passed)),
                ("measured", Json::Real(c.measured)),
                ("threshold", Json::Real(c.threshold)),
                ("detail", Json::Str(c.detail.clone())),
            ])
        })
        .collect();
    let failures = checks.iter().filter(|c| !c.passed).count();
    Json::object([
        ("passed", Json::Bool(failures == 0)),
        ("failures", Json::Int(failures as i64)),
        ("checks", Json::Array(items)),
    ])
}

/// `n,s,ln_i_hat,ln_k_hat`.
pub fn bessel_csv(rows: &[BesselEval]) -> String {
    csv(
        "n,s,ln_i_hat,ln_k_hat",
        rows.iter().map(|e| {
            vec![e.order.to_string(), fmt_real(e.arg), fmt_real(e.i_hat().ln_abs()), fmt_real(e.k_hat().ln_abs())]
        }),
    )
}
