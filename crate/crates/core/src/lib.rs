//! Energy model and mission planner for a perimeter-following SLAM robot.
//!
//! The crate models a robot that circles a square arena on an inset path,
//! scans with a 360-degree 2D LiDAR once per sensing period, and offloads
//! each period's data to an access point at one arena corner over a
//! Rician/Friis link. On top of that model it solves for the energy-minimal
//! transmit powers, communication duty ratio, sensing period and exploration
//! speed, and evaluates map-reconstruction quality metrics on simulated
//! scan data.
//!
//! Module map:
//! - [`geometry`]: arena, inset-square trajectory, robot-to-AP distance.
//! - [`world`]: synthetic fence world, ray-cast LiDAR and noisy odometry.
//! - [`channel`]: Rician fading, Friis received power, rate, data integral.
//! - [`power`]: implicit per-period transmit-power solver and upper bounds.
//! - [`energy`]: mechanical/LiDAR/communication energy and its derivative.
//! - [`planner`]: feasibility checks, closed-form optima, parameter sweeps.
//! - [`mapping`]: point-cloud transforms, occupancy grids, map losses.

// Negated comparisons are the NaN-rejecting form of the domain guards here;
// `x <= 0.0` would wave NaN through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channel;
pub mod energy;
pub mod geometry;
pub mod mapping;
pub mod planner;
pub mod power;
mod rng;
pub mod world;
