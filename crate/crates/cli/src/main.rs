mod args;
mod commands;
mod config;
mod error;
mod sweep;

use std::process::ExitCode;

use clap::Parser;
use necrotica::export::bessel_csv;
use necrotica::specfun::bessel_table;

use args::{Cli, Command, Task};
use config::Settings;
use error::CliResult;

fn single(task: Task, settings: &Settings) -> CliResult<necrotica::export::Json> {
    let params = settings.single()?;
    commands::run_task(task, settings, &params, &settings.out)
}

fn run(cli: Cli) -> CliResult<()> {
    let settings = Settings::resolve(&cli.opts)?;
    let doc = match cli.command {
        Command::Sweep { task, target_sigma_tilde } => sweep::run_sweep(task, target_sigma_tilde, &settings)?,
        Command::DumpBessel { s } => {
            let mut rows = Vec::new();
            for &x in &s {
                rows.extend(bessel_table(settings.n_max, x, settings.order_cap)?);
            }
            print!("{}", bessel_csv(&rows));
            return Ok(());
        }
        Command::Solve => single(Task::Solve, &settings)?,
        Command::Spectrum => single(Task::Spectrum, &settings)?,
        Command::Bifurcate => single(Task::Bifurcate, &settings)?,
        Command::Branch => single(Task::Branch, &settings)?,
        Command::Verify => single(Task::Verify, &settings)?,
    };
    print!("{}", doc.render());
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
