//! Parameter sweeps: one subdirectory per instance plus `index.json`.

use necrotica::export::Json;
use necrotica::solve_radius;
use rayon::prelude::*;

use crate::args::Task;
use crate::commands::{run_task, write_file};
use crate::config::Settings;
use crate::error::{CliError, CliResult};

const RHO_SEARCH: (f64, f64) = (1e-3, 1e3);

/// Finds ρ with `σ̃(ρ) = target` for fixed (β, σ̲) by bisection in `ln ρ`.
/// Monotonicity in ρ is not known, so the first sign change on a doubling
/// grid over [1e-3, 1e3] is taken.
pub fn rho_for_sigma_tilde(settings: &Settings, beta: f64, sigma_under: f64, target: f64) -> CliResult<f64> {
    if !(sigma_under < target && target < 1.0) {
        return Err(CliError::input(format!(
            "target sigma_tilde must lie in (sigma_under, 1) = ({sigma_under}, 1), got {target}"
        )));
    }
    let g = |rho: f64| -> CliResult<f64> {
        Ok(solve_radius(&settings.params(rho, beta, sigma_under)?)?.sigma_tilde - target)
    };
    let (mut lo, mut hi) = (RHO_SEARCH.0, RHO_SEARCH.0);
    let mut g_lo = g(lo)?;
    loop {
        hi = (hi * 2.0).min(RHO_SEARCH.1);
        let g_hi = g(hi)?;
        if g_lo.signum() != g_hi.signum() {
            break;
        }
        if hi >= RHO_SEARCH.1 {
            return Err(CliError::Numeric(format!(
                "no rho in [{}, {}] gives sigma_tilde = {target} at beta = {beta}, sigma_under = {sigma_under}",
                RHO_SEARCH.0, RHO_SEARCH.1
            )));
        }
        (lo, g_lo) = (hi, g_hi);
    }
    while hi - lo > 1e-12 * hi {
        let mid = (lo * hi).sqrt();
        let g_mid = g(mid)?;
        if g_mid == 0.0 {
            return Ok(mid);
        }
        if g_mid.signum() == g_lo.signum() {
            (lo, g_lo) = (mid, g_mid);
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

struct Outcome {
    dir: String,
    params: (f64, f64, f64),
    result: CliResult<()>,
}

pub fn run_sweep(task: Task, target: Option<f64>, settings: &Settings) -> CliResult<Json> {
    let grid: Vec<(f64, f64, f64)> = match target {
        Some(t) => {
            if !settings.rho.is_empty() {
                return Err(CliError::input("--target-sigma-tilde replaces --rho; give only one"));
            }
            let mut s = settings.clone();
            s.rho = vec![f64::NAN];
            s.grid()?.into_iter().map(|(_, b, su)| (t, b, su)).collect()
        }
        None => settings.grid()?,
    };
    let pool = {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(j) = settings.jobs {
            b = b.num_threads(j);
        }
        b.build().map_err(|e| CliError::Numeric(format!("cannot start worker pool: {e}")))?
    };
    let outcomes: Vec<Outcome> = pool.install(|| {
        grid.par_iter()
            .enumerate()
            .map(|(i, &(a, beta, su))| {
                let dir = format!("{i:03}");
                let rho = match target {
                    Some(t) => rho_for_sigma_tilde(settings, beta, su, t),
                    None => Ok(a),
                };
                let found = rho.as_ref().map_or(f64::NAN, |&r| r);
                let result = rho.and_then(|rho| {
                    let params = settings.params(rho, beta, su)?;
                    run_task(task, settings, &params, &settings.out.join(&dir)).map(|_| ())
                });
                Outcome { dir, params: (found, beta, su), result }
            })
            .collect()
    });

    let mut failed = 0;
    let mut worst = 0;
    let items = outcomes
        .iter()
        .map(|o| {
            let (status, code, message) = match &o.result {
                Ok(()) => ("ok", 0, String::new()),
                Err(e) => {
                    failed += 1;
                    worst = worst.max(e.exit_code());
                    ("failed", e.exit_code(), e.to_string())
                }
            };
            Json::object([
                ("dir", Json::Str(o.dir.clone())),
                ("rho", Json::Real(o.params.0)),
                ("beta", Json::Real(o.params.1)),
                ("sigma_under", Json::Real(o.params.2)),
                ("status", Json::Str(status.into())),
                ("exit_code", Json::Int(code as i64)),
                ("message", Json::Str(message)),
            ])
        })
        .collect();
    let mut fields = vec![("task", Json::Str(task.name().into()))];
    if let Some(t) = target {
        fields.push(("target_sigma_tilde", Json::Real(t)));
    }
    fields.push(("instances", Json::Array(items)));
    let doc = Json::object(fields);
    write_file(&settings.out.join("index.json"), &doc.render())?;
    if failed > 0 {
        return Err(CliError::Sweep(failed, worst));
    }
    Ok(doc)
}
