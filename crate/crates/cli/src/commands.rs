//! One task on one model instance; every artifact lands in `dir`.

use std::path::Path;

use necrotica::branch::{branch_shape, field_grid};
use necrotica::export::{
    branch_json, checks_json, field_csv, profile_csv, report_json, shape_csv, spectrum_csv, summary_json, Json,
};
use necrotica::spectrum::spectrum_table;
use necrotica::verify::{all_pass, run_suite};
use necrotica::{bifurcation_report, solve_radius, ModelParams};

use crate::args::{Format, Task};
use crate::config::Settings;
use crate::error::{CliError, CliResult};

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent).map_err(|source| CliError::Io { path: parent.to_path_buf(), source })?;
    }
    std::fs::write(path, contents).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Converts one of our CSV tables to an array of objects. Cells without a
/// `.` or exponent are integers; blank cells become `null`.
fn csv_to_json(csv: &str) -> Json {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap_or_default().split(',').collect();
    let rows = lines
        .map(|line| {
            Json::object(header.iter().zip(line.split(',')).map(|(&k, cell)| {
                let v = if cell.is_empty() {
                    Json::Null
                } else if !cell.contains(['.', 'e', 'N', 'i']) {
                    cell.parse().map(Json::Int).unwrap_or(Json::Null)
                } else {
                    cell.parse().map(Json::Real).unwrap_or(Json::Null)
                };
                (k, v)
            }))
        })
        .collect();
    Json::Array(rows)
}

fn write_table(dir: &Path, stem: &str, csv: String, format: Format) -> CliResult<()> {
    match format {
        Format::Csv => write_file(&dir.join(format!("{stem}.csv")), &csv),
        Format::Json => write_file(&dir.join(format!("{stem}.json")), &csv_to_json(&csv).render()),
    }
}

/// Runs `task` and returns its primary JSON document, which has also
/// been written to `dir`.
pub fn run_task(task: Task, settings: &Settings, params: &ModelParams, dir: &Path) -> CliResult<Json> {
    if matches!(task, Task::Bifurcate | Task::Branch | Task::Verify) {
        settings.check_window()?;
    }
    match task {
        Task::Solve => {
            let sol = solve_radius(params)?;
            let doc = summary_json(&sol);
            write_file(&dir.join("solution.json"), &doc.render())?;
            let mu = settings.mu.unwrap_or(1.0);
            write_table(dir, "profile", profile_csv(&sol, mu, settings.r_grid)?, settings.format)?;
            Ok(doc)
        }
        Task::Spectrum => {
            let sol = solve_radius(params)?;
            let modes = spectrum_table(&sol, settings.n_max)?;
            write_table(dir, "spectrum", spectrum_csv(&modes), settings.format)?;
            Ok(summary_json(&sol))
        }
        Task::Bifurcate => {
            let sol = solve_radius(params)?;
            let report = bifurcation_report(&sol, settings.n_max, settings.window)?;
            let doc = report_json(&report);
            write_file(&dir.join("report.json"), &doc.render())?;
            Ok(doc)
        }
        Task::Branch => {
            let n = settings.n.ok_or_else(|| CliError::input("branch needs --n"))?;
            let epsilon = settings.epsilon.ok_or_else(|| CliError::input("branch needs --epsilon"))?;
            let sol = solve_radius(params)?;
            let report = bifurcation_report(&sol, settings.n_max, settings.window)?;
            let shape = branch_shape(&sol, &report, n, epsilon, settings.theta_grid)?;
            let mu = settings.mu.unwrap_or(shape.mu_n);
            let fields = field_grid(&sol, n, mu, settings.r_grid, settings.theta_grid)?;
            let doc = branch_json(&shape);
            write_file(&dir.join("branch.json"), &doc.render())?;
            write_table(dir, "shape", shape_csv(&shape), settings.format)?;
            write_table(dir, "field", field_csv(&fields), settings.format)?;
            Ok(doc)
        }
        Task::Verify => {
            let checks = run_suite(params, settings.n_max, settings.window)?;
            let doc = checks_json(&checks);
            write_file(&dir.join("checks.json"), &doc.render())?;
            if all_pass(&checks) {
                Ok(doc)
            } else {
                let failures = checks.iter().filter(|c| !c.passed).count();
                Err(CliError::Verification { failures, total: checks.len() })
            }
        }
    }
}
