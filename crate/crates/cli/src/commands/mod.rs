//! The five subcommands and their shared run context.

mod map_eval;
mod plan;
mod simulate;
mod sweep;
mod verify;

pub use map_eval::{run_map_eval, MapEvalOutcome};
pub use plan::{run_plan, PlanOutcome};
pub use simulate::{run_simulate, simulate_records, SimulateOutcome};
pub use sweep::{parse_grid, run_sweep, SweepAxis};
pub use verify::{run_verify, VerifyOutcome};

use crate::config::RunConfig;
use crate::dataset::fmt_f64;
use crate::manifest::RunManifest;
use crate::CliError;
use slam_energy_core::channel::{ChannelModel, ChannelRealization};
use slam_energy_core::geometry::{MissionConfig, SchedulePlan};
use slam_energy_core::planner::{optimal_speed, optimal_t_sens};
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "SLAM_ENERGY_OUT";

/// Resolved configuration plus the output directory for this run.
pub struct RunContext {
    pub config: RunConfig,
    pub out_dir: PathBuf,
    started: Instant,
}

impl RunContext {
    /// Output directory precedence: --out flag, config key, environment
    /// variable, then ./out.
    pub fn new(config: RunConfig, out_flag: Option<PathBuf>) -> Result<Self, CliError> {
        let out_dir = out_flag
            .or_else(|| config.out_dir.clone())
            .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("out"));
        std::fs::create_dir_all(&out_dir)?;
        Ok(Self {
            config,
            out_dir,
            started: Instant::now(),
        })
    }

    pub fn mission(&self) -> Result<MissionConfig, CliError> {
        Ok(self.config.mission()?)
    }

    pub fn channel_model(&self) -> Result<ChannelModel, CliError> {
        Ok(self.config.channel()?)
    }

    /// Speed and sensing period: explicit overrides or the closed-form
    /// optimum.
    pub fn schedule(&self, mission: &MissionConfig) -> Result<(f64, f64), CliError> {
        let speed = match self.config.speed {
            Some(v) => v,
            None => optimal_speed(mission),
        };
        let t_sens = match self.config.t_sens {
            Some(t) => t,
            None => {
                optimal_t_sens(speed, mission)
                    .map_err(|e| CliError::Config(e.to_string()))?
                    .value
            }
        };
        Ok((speed, t_sens))
    }

    pub fn plan(&self, mission: &MissionConfig) -> Result<SchedulePlan, CliError> {
        let (speed, t_sens) = self.schedule(mission)?;
        Ok(SchedulePlan::new(mission, speed, t_sens, self.config.rho)?)
    }

    pub fn realization(&self, model: &ChannelModel, periods: usize) -> ChannelRealization {
        if self.config.deterministic_channel {
            ChannelRealization::deterministic(periods)
        } else {
            ChannelRealization::sample(model, periods)
        }
    }

    pub fn sampling(&self) -> slam_energy_core::planner::ChannelSampling {
        if self.config.deterministic_channel {
            slam_energy_core::planner::ChannelSampling::Deterministic
        } else {
            slam_energy_core::planner::ChannelSampling::Rician
        }
    }

    /// Start a manifest for `command`; callers add outputs and finish it.
    pub fn manifest(&self, command: &str) -> RunManifest {
        RunManifest::new(command, self.config.seed, &self.config.canonical())
    }

    /// Stamp the duration and write the manifest last.
    pub fn finish_manifest(&self, mut manifest: RunManifest) -> Result<(), CliError> {
        manifest.duration_seconds = self.started.elapsed().as_secs_f64();
        manifest.write(&self.out_dir)?;
        Ok(())
    }

    pub fn out_path(&self, name: &str) -> PathBuf {
        self.out_dir.join(name)
    }
}

/// Write rows through the csv crate with mandatory header, RFC-4180
/// quoting, and full-precision floats.
pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path).map_err(|e| CliError::Io(e.to_string()))?;
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn f(x: f64) -> String {
    fmt_f64(x)
}
