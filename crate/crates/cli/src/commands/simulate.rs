//! `simulate`: execute the mission period by period and record the scan
//! dataset.

use super::RunContext;
use crate::dataset::{write_records, ScanRecord};
use crate::CliError;
use rayon::prelude::*;
use slam_energy_core::geometry::{robot_position, MissionConfig};
use slam_energy_core::world::{
    build_square_world, odometry_read, raycast_scan, RobotState, SensorNoiseModel, WorldMap,
};
use std::f64::consts::FRAC_PI_2;

/// Motion direction of each leg, counterclockwise from the +x start.
fn leg_heading(leg: usize) -> f64 {
    leg as f64 * FRAC_PI_2
}

/// Heading at mission time `t`; holds the final value once the robot parks.
fn heading_at(t: f64, leg_time: f64) -> f64 {
    let leg = ((t / leg_time).floor() as usize).min(3);
    leg_heading(leg)
}

/// Planar velocity at mission time `t`; zero once the robot parks.
fn velocity_at(t: f64, speed: f64, leg_time: f64) -> [f64; 2] {
    if t >= 4.0 * leg_time {
        return [0.0, 0.0];
    }
    let h = heading_at(t, leg_time);
    [speed * h.cos(), speed * h.sin()]
}

/// Kinematic state at the start of period `k` (1-based). Acceleration and
/// angular velocity are period-average rates, so corner turns inside a
/// period show up in the odometry.
fn state_at_period(k: u32, mission: &MissionConfig, speed: f64, t_sens: f64) -> RobotState {
    let leg_time = mission.path_length() / (4.0 * speed);
    let t = (k as f64 - 1.0) * t_sens;
    let t_next = t + t_sens;
    let pos = robot_position(t.min(4.0 * leg_time), mission, speed)
        .expect("period start lies within the mission");
    let vel = velocity_at(t, speed, leg_time);
    let vel_next = velocity_at(t_next, speed, leg_time);
    let w_z = (heading_at(t_next.min(4.0 * leg_time), leg_time) - heading_at(t, leg_time)) / t_sens;
    RobotState {
        position: [pos[0], pos[1], 0.0],
        velocity: [vel[0], vel[1], 0.0],
        angular_velocity: [0.0, 0.0, w_z],
        acceleration: [
            (vel_next[0] - vel[0]) / t_sens,
            (vel_next[1] - vel[1]) / t_sens,
            0.0,
        ],
    }
}

/// Build the per-period records of a mission without touching the disk.
pub fn simulate_records(
    mission: &MissionConfig,
    world: &WorldMap,
    noise: &SensorNoiseModel,
    speed: f64,
    t_sens: f64,
    periods: u32,
) -> Result<Vec<ScanRecord>, CliError> {
    (1..=periods)
        .into_par_iter()
        .map(|k| {
            let state = state_at_period(k, mission, speed, t_sens);
            let prev_state = if k == 1 {
                // Steady approach: the robot enters the arena already at
                // cruise speed on leg 0.
                RobotState {
                    acceleration: [0.0; 3],
                    angular_velocity: [0.0; 3],
                    ..state_at_period(1, mission, speed, t_sens)
                }
            } else {
                state_at_period(k - 1, mission, speed, t_sens)
            };
            let scan = raycast_scan(&state, world, noise, k)?;
            let odometry = odometry_read(&prev_state, noise, k);
            let leg_time = mission.path_length() / (4.0 * speed);
            let heading = heading_at((k as f64 - 1.0) * t_sens, leg_time);
            Ok(ScanRecord {
                period: k,
                ranges: scan.ranges,
                odometry,
                pose: [state.position[0], state.position[1], heading],
            })
        })
        .collect()
}

pub struct SimulateOutcome {
    pub periods: u32,
    pub dataset_path: std::path::PathBuf,
}

pub fn run_simulate(ctx: &RunContext) -> Result<SimulateOutcome, CliError> {
    let mission = ctx.mission()?;
    let plan = ctx.plan(&mission)?;
    let world =
        build_square_world(mission.side_length)?.with_resolution_hint(ctx.config.grid_resolution);
    let noise = ctx.config.noise()?;

    let records = simulate_records(
        &mission,
        &world,
        &noise,
        plan.speed,
        plan.t_sens,
        plan.periods,
    )?;

    let dataset_path = ctx.out_path("dataset.csv");
    let file = std::fs::File::create(&dataset_path)?;
    write_records(std::io::BufWriter::new(file), &records)?;
    println!(
        "simulated {} periods at v = {:.4} m/s, t_sens = {:.4} s -> {}",
        plan.periods,
        plan.speed,
        plan.t_sens,
        dataset_path.display()
    );

    let mut manifest = ctx.manifest("simulate");
    manifest.add_output(&dataset_path)?;
    ctx.finish_manifest(manifest)?;

    Ok(SimulateOutcome {
        periods: plan.periods,
        dataset_path,
    })
}
