//! `penalfr`: command-line front end for the eigensolution analyses, the 1D
//! advection experiments and the 2D Navier-Stokes solver.
//!
//! Exit codes: 0 on success, 2 on configuration errors, 3 on numerical
//! failures (instability / inadmissible states), 1 otherwise.

mod output;
mod repro;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use penalfr_core::Error;

#[derive(Parser)]
#[command(name = "penalfr", version, about = "High-order FR solvers with penalized immersed boundaries and SFD")]
struct Cli {
    /// Worker threads (default: all logical cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output directory (overrides `out_dir` from the config).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigensolution analysis of the penalized/SFD advection operator.
    Eigen {
        #[arg(value_enum)]
        kind: EigenKind,
        #[arg(long)]
        config: PathBuf,
    },
    /// Time-domain 1D advection runs and parameter sweeps.
    Advect {
        #[arg(long)]
        config: PathBuf,
        /// Also run the (eta, chi_f, Delta) sweep grid from this TOML file.
        #[arg(long)]
        sweep: Option<PathBuf>,
    },
    /// 2D compressible Navier-Stokes solver.
    Ns2d {
        #[arg(long)]
        config: PathBuf,
        /// Resume from a checkpoint file.
        #[arg(long)]
        resume: Option<PathBuf>,
    },
    /// Reproduction runs for the published figures and the result table.
    Repro {
        /// Identifier such as fig3, fig5, fig7, table1. Use `list` to print
        /// all known identifiers.
        id: String,
        /// Reduced-cost variant where one exists (smaller domain/horizon).
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EigenKind {
    Semi,
    Full,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("penalfr: failed to configure {n} threads: {e}");
            return ExitCode::from(1);
        }
    }
    let result = match cli.command {
        Command::Eigen { kind, config } => run::eigen(kind, &config, cli.out.as_deref()),
        Command::Advect { config, sweep } => {
            run::advect(&config, sweep.as_deref(), cli.out.as_deref())
        }
        Command::Ns2d { config, resume } => {
            run::ns2d(&config, resume.as_deref(), cli.out.as_deref())
        }
        Command::Repro { id, quick } => repro::run(&id, quick, cli.out.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("penalfr: {err}");
            let code = match err.downcast_ref::<Error>() {
                Some(Error::Config(_)) | Some(Error::InvalidParam(_)) => 2,
                Some(Error::Instability { .. }) | Some(Error::InadmissibleState(_)) => 3,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}
