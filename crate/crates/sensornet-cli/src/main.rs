//! `sensornet` — parameter sweeps over the coverage/connectivity bounds and
//! the ground-truth simulator, emitting stable CSV.

mod cmds;
mod output;
mod params;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use params::ParamArgs;

/// Worker-count override; 0 or unset picks the number of cores. Results are
/// identical for any value, only speed changes.
const WORKERS_ENV: &str = "SENSORNET_WORKERS";

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Precondition(String),
    NonConvergence(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::NonConvergence(_) => 4,
            CliError::Io(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Precondition(m) | CliError::NonConvergence(m) | CliError::Io(m) => m,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "sensornet",
    version,
    about = "Coverage and connectivity of finite sensor networks: analytic bounds and exact Monte Carlo"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analytic bounds, estimates, and asymptotic baselines over a radius sweep
    Bounds(ParamArgs),
    /// Seeded Monte Carlo frequencies with Wilson intervals over a radius sweep
    Simulate(ParamArgs),
    /// Realizable pairwise lattice distances of an n-node grid
    Breakpoints {
        /// Node count (perfect square)
        #[arg(long)]
        n: u64,
        /// Output CSV path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the CSV bundle for one of the canned figure recipes
    Reproduce {
        /// Recipe id (fig2, fig3, fig5, fig6, fig8, fig9, fig10)
        id: String,
        /// Output directory
        #[arg(long)]
        out: PathBuf,
        /// Trials per sweep point
        #[arg(long)]
        trials: Option<u64>,
        /// Master seed
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn init_workers() {
    if let Ok(raw) = std::env::var(WORKERS_ENV) {
        match raw.trim().parse::<usize>() {
            Ok(0) => {}
            Ok(n) => {
                if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                    log::warn!("could not size worker pool: {e}");
                }
            }
            Err(_) => log::warn!("ignoring non-numeric {WORKERS_ENV}={raw:?}"),
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Bounds(args) => cmds::cmd_bounds(&args.resolve("coverage")?),
        Command::Simulate(args) => cmds::cmd_simulate(&args.resolve("k-covered")?),
        Command::Breakpoints { n, out } => cmds::cmd_breakpoints(n, &out),
        Command::Reproduce { id, out, trials, seed } => {
            cmds::cmd_reproduce(&id, &out, trials, seed.unwrap_or(42))
        }
    }
}

fn main() -> ExitCode {
    env_logger::init();
    init_workers();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
