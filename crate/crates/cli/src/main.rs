use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};

mod commands;
mod config;
mod settings;

use config::ConfigFile;
use settings::{CommonArgs, Settings};

/// Centered finite differences on adapted grids for a boundary-layer BVP.
///
/// Exit status: 0 when every computation converged, 1 when some adaptive or
/// iterative run hit its iteration limit, 2 on errors.
#[derive(Debug, Parser)]
#[command(name = "supraconv", version)]
struct Cli {
    /// `key = value` file whose entries serve as defaults for the flags
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve once and write `x,u,u_exact,abs_error`
    Solve(CommonArgs),
    /// Error and observed order along a doubling ladder of N
    Convergence {
        #[command(flatten)]
        common: CommonArgs,
        /// Comma-separated N values, each double the previous
        #[arg(long)]
        ladder: Option<String>,
    },
    /// Solution-adaptive grid with ω = 1 + α|u_x|^β
    Adapt {
        #[command(flatten)]
        common: CommonArgs,
        /// Per-iteration trace CSV `n,error_norm,solution_change,grid_change`
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Convergence orders on the four closed-form mapped grid families
    Table1 {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        ladder: Option<String>,
    },
    /// Error and iteration count over an (α, β) sweep of adaptive grids
    Table2 {
        #[command(flatten)]
        common: CommonArgs,
        /// Comma-separated α values
        #[arg(long)]
        alphas: Option<String>,
        /// Comma-separated β values
        #[arg(long)]
        betas: Option<String>,
    },
    /// Per-node errors on the four mapped grids, `x,abs_error,monitor_label`
    ErrorProfile(CommonArgs),
}

fn run(cli: Cli) -> Result<bool> {
    let cfg = match &cli.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    match &cli.command {
        Command::Solve(c) => commands::run_solve(&Settings::resolve(c, &cfg)?),
        Command::Convergence { common, ladder } => {
            commands::run_convergence(&Settings::resolve(common, &cfg)?, ladder.as_deref())
        }
        Command::Adapt { common, trace } => {
            let mut s = Settings::resolve(common, &cfg)?;
            s.grid = Some(settings::GridMode::Adaptive);
            commands::run_adapt(&s, trace.as_deref())
        }
        Command::Table1 { common, ladder } => {
            commands::run_table1(&Settings::resolve(common, &cfg)?, ladder.as_deref())
        }
        Command::Table2 {
            common,
            alphas,
            betas,
        } => commands::run_table2(
            &Settings::resolve(common, &cfg)?,
            alphas.as_deref(),
            betas.as_deref(),
        ),
        Command::ErrorProfile(c) => commands::run_error_profile(&Settings::resolve(c, &cfg)?),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
