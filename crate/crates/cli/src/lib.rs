//! Experiment runner for the energy-efficient SLAM mission model:
//! configuration ingestion, the five subcommands, CSV persistence and
//! reproducible-run manifests.

// Negated comparisons are the NaN-rejecting form of the domain guards here.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod dataset;
pub mod manifest;

use thiserror::Error;

/// Process exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;
pub const EXIT_IO: i32 = 4;
pub const EXIT_CONFIG: i32 = 5;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration: {0}")]
    Config(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("solver: {0}")]
    Solver(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Io(_) => EXIT_IO,
            CliError::Infeasible(_) => EXIT_INFEASIBLE,
            CliError::Solver(_) | CliError::Verification(_) => EXIT_SOLVER,
        }
    }
}

impl From<config::ConfigError> for CliError {
    fn from(e: config::ConfigError) -> Self {
        match e {
            config::ConfigError::Io { .. } => CliError::Io(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<dataset::DatasetError> for CliError {
    fn from(e: dataset::DatasetError) -> Self {
        match e {
            dataset::DatasetError::Io(_) | dataset::DatasetError::Csv(_) => {
                CliError::Io(e.to_string())
            }
            dataset::DatasetError::Format { .. } => CliError::Config(e.to_string()),
        }
    }
}

impl From<slam_energy_core::power::SolverError> for CliError {
    fn from(e: slam_energy_core::power::SolverError) -> Self {
        match e {
            slam_energy_core::power::SolverError::InfeasibleLink { .. } => {
                CliError::Infeasible(e.to_string())
            }
            _ => CliError::Solver(e.to_string()),
        }
    }
}

impl From<slam_energy_core::planner::PlannerError> for CliError {
    fn from(e: slam_energy_core::planner::PlannerError) -> Self {
        match e {
            slam_energy_core::planner::PlannerError::Solver(inner) => inner.into(),
            _ => CliError::Solver(e.to_string()),
        }
    }
}

impl From<slam_energy_core::geometry::GeometryError> for CliError {
    fn from(e: slam_energy_core::geometry::GeometryError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<slam_energy_core::channel::ChannelError> for CliError {
    fn from(e: slam_energy_core::channel::ChannelError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<slam_energy_core::energy::EnergyError> for CliError {
    fn from(e: slam_energy_core::energy::EnergyError) -> Self {
        CliError::Solver(e.to_string())
    }
}

impl From<slam_energy_core::world::WorldError> for CliError {
    fn from(e: slam_energy_core::world::WorldError) -> Self {
        CliError::Solver(e.to_string())
    }
}

impl From<slam_energy_core::mapping::MappingError> for CliError {
    fn from(e: slam_energy_core::mapping::MappingError) -> Self {
        CliError::Solver(e.to_string())
    }
}
