use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use scatter::cli::{exit_code, run, Command, Overrides};

#[derive(Parser)]
#[command(name = "scatter", version, about = "Multipole scattering experiments")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Common {
    /// JSON experiment file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory (overrides `output_dir`).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (overrides `jobs`).
    #[arg(long)]
    jobs: Option<usize>,
    /// Random seed (overrides `seed`).
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// K(m) against shape parameter and order.
    Kcurve(Common),
    /// Boundary error against order.
    SweepOrder(Common),
    /// Field render and coefficient table.
    Field(Common),
    /// Built-in identity and oracle checks.
    OracleCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cmd, common, fault) = match cli.command {
        Cmd::Kcurve(c) => (Command::Kcurve, c, false),
        Cmd::SweepOrder(c) => (Command::SweepOrder, c, false),
        Cmd::Field(c) => (Command::Field, c, false),
        Cmd::OracleCheck { common, inject_fault } => (Command::OracleCheck, common, inject_fault),
    };
    let overrides = Overrides {
        out: common.out,
        jobs: common.jobs,
        seed: common.seed,
    };
    match run(cmd, common.config.as_deref(), &overrides, fault) {
        Ok(lines) => {
            for l in lines {
                println!("{l}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
