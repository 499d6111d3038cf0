//! Settings resolution: config file, then flags, then defaults.

use std::path::{Path, PathBuf};

use necrotica::specfun::DEFAULT_ORDER_CAP;
use necrotica::ModelParams;
use serde::Deserialize;

use crate::args::{Format, Options};
use crate::error::{CliError, CliResult};

pub const ORDER_CAP_ENV: &str = "NECROTICA_ORDER_CAP";

/// A single number, a list, or a comma-separated string of numbers.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Values {
    One(f64),
    Many(Vec<f64>),
    Text(String),
}

impl Values {
    fn into_vec(self, key: &str) -> CliResult<Vec<f64>> {
        match self {
            Values::One(x) => Ok(vec![x]),
            Values::Many(v) => Ok(v),
            Values::Text(s) => s
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<f64>()
                        .map_err(|_| CliError::input(format!("config key {key}: `{t}` is not a number")))
                })
                .collect(),
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct FileConfig {
    rho: Option<Values>,
    beta: Option<Values>,
    #[serde(alias = "sigma_under")]
    sigma_under: Option<Values>,
    mu: Option<f64>,
    n: Option<u32>,
    #[serde(alias = "n_max")]
    n_max: Option<u32>,
    window: Option<u32>,
    epsilon: Option<f64>,
    #[serde(alias = "theta_grid")]
    theta_grid: Option<usize>,
    #[serde(alias = "r_grid")]
    r_grid: Option<usize>,
    jobs: Option<usize>,
    out: Option<PathBuf>,
    format: Option<String>,
}

/// Fully resolved run settings.
#[derive(Debug, Clone)]
pub struct Settings {
    pub rho: Vec<f64>,
    pub beta: Vec<f64>,
    pub sigma_under: Vec<f64>,
    pub mu: Option<f64>,
    pub n: Option<u32>,
    pub n_max: u32,
    pub window: u32,
    pub epsilon: Option<f64>,
    pub theta_grid: usize,
    pub r_grid: usize,
    pub jobs: Option<usize>,
    pub out: PathBuf,
    pub format: Format,
    pub order_cap: u32,
}

fn read_config(path: &Path) -> CliResult<FileConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read config {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| CliError::input(format!("config {}: {e}", path.display())))
}

fn order_cap_from_env() -> CliResult<u32> {
    match std::env::var(ORDER_CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse::<u32>()
            .ok()
            .filter(|&c| c > 0)
            .ok_or_else(|| CliError::input(format!("{ORDER_CAP_ENV} must be a positive integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_ORDER_CAP),
    }
}

impl Settings {
    pub fn resolve(opts: &Options) -> CliResult<Self> {
        let file = match &opts.config {
            Some(p) => read_config(p)?,
            None => FileConfig::default(),
        };
        let list = |flag: &Option<Vec<f64>>, from_file: Option<Values>, key: &str| -> CliResult<Vec<f64>> {
            match (flag, from_file) {
                (Some(v), _) => Ok(v.clone()),
                (None, Some(v)) => v.into_vec(key),
                (None, None) => Ok(Vec::new()),
            }
        };
        let format = match (opts.format, file.format.as_deref()) {
            (Some(f), _) => f,
            (None, None) | (None, Some("csv")) => Format::Csv,
            (None, Some("json")) => Format::Json,
            (None, Some(other)) => return Err(CliError::input(format!("format must be csv or json, got `{other}`"))),
        };
        let s = Settings {
            rho: list(&opts.rho, file.rho, "rho")?,
            beta: list(&opts.beta, file.beta, "beta")?,
            sigma_under: list(&opts.sigma_under, file.sigma_under, "sigma-under")?,
            mu: opts.mu.or(file.mu),
            n: opts.n.or(file.n),
            n_max: opts.n_max.or(file.n_max).unwrap_or(200),
            window: opts.window.or(file.window).unwrap_or(16),
            epsilon: opts.epsilon.or(file.epsilon),
            theta_grid: opts.theta_grid.or(file.theta_grid).unwrap_or(64),
            r_grid: opts.r_grid.or(file.r_grid).unwrap_or(201),
            jobs: opts.jobs.or(file.jobs),
            out: opts.out.clone().or(file.out).unwrap_or_else(|| PathBuf::from(".")),
            format,
            order_cap: order_cap_from_env()?,
        };
        s.check()?;
        Ok(s)
    }

    fn check(&self) -> CliResult<()> {
        // Range checks on whatever was given, so a bad value is reported
        // even when other parameters are missing.
        if let Some(r) = self.rho.iter().find(|&&r| !(r > 0.0 && r.is_finite())) {
            return Err(CliError::input(format!("rho must satisfy rho > 0, got {r}")));
        }
        if let Some(b) = self.beta.iter().find(|&&b| !(b > 0.0 && b.is_finite())) {
            return Err(CliError::input(format!("beta must satisfy beta > 0, got {b}")));
        }
        if let Some(s) = self.sigma_under.iter().find(|&&s| !(s > 0.0 && s < 1.0)) {
            return Err(CliError::input(format!("sigma_under must satisfy 0 < sigma_under < 1, got {s}")));
        }
        if let Some(mu) = self.mu {
            if !(mu > 0.0 && mu.is_finite()) {
                return Err(CliError::input(format!("mu must be positive, got {mu}")));
            }
        }
        if self.n_max >= self.order_cap {
            return Err(CliError::input(format!(
                "n-max = {} needs a Bessel order cap above it (cap {}; set {ORDER_CAP_ENV})",
                self.n_max, self.order_cap
            )));
        }
        if self.r_grid < 2 {
            return Err(CliError::input("r-grid needs at least 2 points"));
        }
        if self.jobs == Some(0) {
            return Err(CliError::input("jobs must be at least 1"));
        }
        Ok(())
    }

    /// Bifurcation scans need `n_max >= window >= 8`.
    pub fn check_window(&self) -> CliResult<()> {
        if self.window < 8 || self.n_max < self.window {
            return Err(CliError::input(format!(
                "need n-max >= window >= 8, got n-max = {}, window = {}",
                self.n_max, self.window
            )));
        }
        Ok(())
    }

    /// Parameter triples in sweep order (ρ slowest, σ̲ fastest).
    pub fn grid(&self) -> CliResult<Vec<(f64, f64, f64)>> {
        for (name, v) in [("rho", &self.rho), ("beta", &self.beta), ("sigma-under", &self.sigma_under)] {
            if v.is_empty() {
                return Err(CliError::input(format!("missing --{name}")));
            }
        }
        let mut out = Vec::new();
        for &rho in &self.rho {
            for &beta in &self.beta {
                for &su in &self.sigma_under {
                    out.push((rho, beta, su));
                }
            }
        }
        Ok(out)
    }

    /// The single instance named by the flags.
    pub fn single(&self) -> CliResult<ModelParams> {
        let grid = self.grid()?;
        if grid.len() != 1 {
            return Err(CliError::input("parameter lists are only accepted by `sweep`"));
        }
        let (rho, beta, su) = grid[0];
        self.params(rho, beta, su)
    }

    pub fn params(&self, rho: f64, beta: f64, sigma_under: f64) -> CliResult<ModelParams> {
        Ok(ModelParams::new(rho, beta, sigma_under)?.with_order_cap(self.order_cap))
    }
}
