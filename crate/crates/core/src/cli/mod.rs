//! Configuration-driven experiment runner behind the `scatter` binary.

mod commands;
mod config;
mod oracle;
mod output;

use std::path::PathBuf;

pub use commands::{cmd_field, cmd_kcurve, cmd_sweep_order, status_of};
pub use config::{shape_name, shape_parameter, Case, ExperimentConfig, KQuadrature, SampleRule, ScattererSpec, ShapeSweep};
pub use oracle::{cmd_oracle_check, Check};
pub use output::{num, render_pgm, Table, VERSION};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Kcurve,
    SweepOrder,
    Field,
    OracleCheck,
}

/// Command-line overrides applied on top of the config file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub seed: Option<u64>,
}

/// Process exit code for an error: 2 for configuration problems, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) => 2,
        _ => 1,
    }
}

fn load(config: Option<&std::path::Path>, o: &Overrides) -> Result<ExperimentConfig> {
    let path = config.ok_or_else(|| Error::Config("--config is required".into()))?;
    let mut cfg = ExperimentConfig::load(path)?;
    if o.out.is_some() {
        cfg.output_dir = o.out.clone();
    }
    if o.jobs.is_some() {
        cfg.jobs = o.jobs;
    }
    if let Some(s) = o.seed {
        cfg.seed = s;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Runs `cmd` and returns the lines to print on success.
pub fn run(cmd: Command, config: Option<&std::path::Path>, o: &Overrides, fault: bool) -> Result<Vec<String>> {
    if cmd == Command::OracleCheck {
        let checks = cmd_oracle_check(fault)?;
        let mut lines = Vec::new();
        for c in &checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            lines.push(format!("{tag} {} ({})", c.name, c.detail));
            if !c.passed {
                for l in &lines {
                    eprintln!("{l}");
                }
                return Err(Error::Numerical(format!("oracle check {} failed: {}", c.name, c.detail)));
            }
        }
        return Ok(lines);
    }

    let cfg = load(config, o)?;
    let jobs = cfg
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Config(format!("jobs: cannot start {jobs} workers: {e}")))?;
    let out_dir = cfg.output_dir.clone().unwrap_or_else(|| PathBuf::from("out"));
    let written = pool.install(|| -> Result<Vec<PathBuf>> {
        Ok(match cmd {
            Command::Kcurve => vec![cmd_kcurve(&cfg, &out_dir)?],
            Command::SweepOrder => vec![cmd_sweep_order(&cfg, &out_dir)?],
            Command::Field => cmd_field(&cfg, &out_dir)?,
            Command::OracleCheck => unreachable!(),
        })
    })?;
    Ok(written.iter().map(|p| format!("wrote {}", p.display())).collect())
}
