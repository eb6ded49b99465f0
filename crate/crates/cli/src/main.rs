use clap::{Parser, Subcommand};
use slam_energy_cli::commands::{
    run_map_eval, run_plan, run_simulate, run_sweep, run_verify, RunContext, SweepAxis,
};
use slam_energy_cli::config::{load_config, RunConfig};
use slam_energy_cli::{CliError, EXIT_OK};
use std::path::PathBuf;
use std::process::ExitCode;

/// Energy-efficient SLAM mission planner and simulator.
#[derive(Parser)]
#[command(name = "slam-energy", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Key=value configuration file; omitted keys use the built-in defaults.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Override the configured seed.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,

    /// Output directory (default: config key, then $SLAM_ENERGY_OUT, then ./out).
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Pin |h_k|^2 = 1 instead of drawing Rician fading.
    #[arg(long, global = true)]
    deterministic_channel: bool,

    /// Override the number of quadrature sub-intervals per window.
    #[arg(long, global = true, value_name = "N")]
    n_sub_intervals: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the optimal schedule, powers and energy breakdown.
    Plan,
    /// Sweep one axis and tabulate the energy split per grid point.
    Sweep {
        /// Swept parameter: t_sens, L or v.
        #[arg(long)]
        axis: SweepAxis,
        /// Inclusive grid start:stop:step.
        #[arg(long)]
        grid: String,
    },
    /// Run the mission and record the scan dataset.
    Simulate,
    /// Score a recorded dataset's map reconstruction.
    MapEval {
        /// Scan dataset produced by `simulate`.
        dataset: PathBuf,
    },
    /// Check the model's analytic claims numerically.
    Verify,
}

fn load(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut config = match &cli.config {
        Some(path) => load_config(path)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if cli.deterministic_channel {
        config.deterministic_channel = true;
    }
    if let Some(n) = cli.n_sub_intervals {
        if n == 0 {
            return Err(CliError::Config(
                "n_sub_intervals must be at least 1".into(),
            ));
        }
        config.n_sub_intervals = n;
    }
    Ok(config)
}

fn run(cli: Cli) -> Result<(), CliError> {
    let config = load(&cli)?;
    let ctx = RunContext::new(config, cli.out.clone())?;
    match &cli.command {
        Command::Plan => {
            run_plan(&ctx)?;
        }
        Command::Sweep { axis, grid } => {
            let grid = slam_energy_cli::commands::parse_grid(grid)?;
            run_sweep(&ctx, *axis, &grid)?;
        }
        Command::Simulate => {
            run_simulate(&ctx)?;
        }
        Command::MapEval { dataset } => {
            run_map_eval(&ctx, dataset)?;
        }
        Command::Verify => {
            run_verify(&ctx)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    // Die quietly when a pipe closes instead of panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::from(EXIT_OK as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
