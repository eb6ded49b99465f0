//! Constraint checking, closed-form optima and parameter sweeps.
//!
//! The energy-minimization problem fixes the duty ratio at 1 (communication
//! energy falls monotonically with the duty ratio), takes the longest sensing period the cycle-count constraint
//! allows, and the slowest speed the task deadline allows. Sweeps rebuild
//! the schedule and re-solve the per-period powers point by point to trace
//! how the energy split moves with the sensing period or the arena size.

use crate::channel::{link_mu, transmitted_bits, ChannelModel, ChannelRealization, FramePayload};
use crate::energy::{total_energy, EnergyBreakdown, EnergyError, MechanicalParams, PeriodLink};
use crate::geometry::{max_distance_in_window, GeometryError, MissionConfig, SchedulePlan};
use crate::power::{solve_mission_powers, PowerSolution, SolverError};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PlannerError {
    #[error("speed must be positive, got {0}")]
    NonPositiveSpeed(f64),
    #[error("sweep grid must be non-empty and strictly increasing")]
    BadGrid,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Energy(#[from] EnergyError),
}

/// Default sample count for window-maximum distances.
pub const DEFAULT_DISTANCE_GRID: usize = 64;

/// One constraint of the feasibility check: signed margin >= 0 means pass.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintCheck {
    pub name: &'static str,
    pub description: &'static str,
    pub passed: bool,
    pub margin: f64,
}

/// Pass/fail per problem constraint plus the overall verdict.
///
/// The data constraint is checked for the transmitting periods 2..=N_m+1;
/// the first period has nothing buffered to send yet.
#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityReport {
    pub checks: Vec<ConstraintCheck>,
    pub feasible: bool,
}

impl FeasibilityReport {
    pub fn check(&self, name: &str) -> Option<&ConstraintCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Evaluate every constraint with numeric slack; failures land in the
/// report, not in an error.
#[allow(clippy::too_many_arguments)]
pub fn check_feasibility(
    plan: &SchedulePlan,
    powers: &PowerSolution,
    config: &MissionConfig,
    payload: &FramePayload,
    model: &ChannelModel,
    realization: &ChannelRealization,
    n_sub: u32,
) -> FeasibilityReport {
    let mut checks = Vec::with_capacity(5);

    // (a) every transmitting period delivers the frame
    let need = payload.payload_bits();
    let mut min_margin = f64::INFINITY;
    let mut data_ok = powers.len() == plan.periods as usize;
    for k in 2..=plan.periods + 1 {
        let bits = powers
            .power(k)
            .and_then(|p| transmitted_bits(k, p, plan, config, model, realization, n_sub).ok());
        match bits {
            Some(bits) => {
                let margin = (bits - need) / need;
                min_margin = min_margin.min(margin);
                // Solver residual keeps solutions within tolerance of the
                // payload; accept margins down to -tolerance.
                if margin < -powers.tolerance.max(1e-12) {
                    data_ok = false;
                }
            }
            None => {
                data_ok = false;
                min_margin = f64::NEG_INFINITY;
            }
        }
    }
    if plan.periods == 0 {
        min_margin = 0.0;
    }
    checks.push(ConstraintCheck {
        name: "data",
        description: "I_k >= 360 a1 + 6 a2 for k = 2..=N_m+1 (relative margin)",
        passed: data_ok,
        margin: min_margin,
    });

    // (b) the sensing cycles fit in the task deadline
    let margin_b = config.t_max - plan.periods as f64 * plan.t_sens;
    checks.push(ConstraintCheck {
        name: "deadline",
        description: "N_m * t_sens <= T_max (slack in s)",
        passed: margin_b >= -1e-9 * config.t_max,
        margin: margin_b,
    });

    // (c) transmit powers are positive
    let min_power = powers.powers.iter().copied().fold(f64::INFINITY, f64::min);
    let power_ok = powers.powers.iter().all(|&p| p > 0.0);
    checks.push(ConstraintCheck {
        name: "power",
        description: "p_tx,k > 0 (minimum power in W)",
        passed: power_ok || powers.is_empty(),
        margin: if powers.is_empty() { 0.0 } else { min_power },
    });

    // (d) duty ratio within (0, 1]
    let margin_d = plan.rho.min(1.0 - plan.rho);
    checks.push(ConstraintCheck {
        name: "duty",
        description: "0 < rho <= 1 (distance to the nearer bound)",
        passed: plan.rho > 0.0 && plan.rho <= 1.0,
        margin: margin_d,
    });

    // (e) enough sensing cycles
    let margin_e = plan.periods as f64 - config.min_cycles as f64;
    checks.push(ConstraintCheck {
        name: "cycles",
        description: "N_m >= N_D (cycle surplus)",
        passed: plan.periods >= config.min_cycles,
        margin: margin_e,
    });

    let feasible = checks.iter().all(|c| c.passed);
    FeasibilityReport { checks, feasible }
}

/// The chosen sensing period and whether it falls in the practical range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalTsens {
    pub value: f64,
    pub within_practical_range: bool,
}

/// Longest sensing period delivering the required cycle count at speed `v`:
/// 4(L - 2e) / (v N_D), in seconds.
pub fn optimal_t_sens(speed: f64, config: &MissionConfig) -> Result<OptimalTsens, PlannerError> {
    if !(speed > 0.0) {
        return Err(PlannerError::NonPositiveSpeed(speed));
    }
    let value = config.path_length() / (speed * config.min_cycles as f64);
    if speed >= optimal_speed(config) {
        debug_assert!(
            value <= config.t_max / config.min_cycles as f64 * (1.0 + 1e-12),
            "t_sens* must respect the deadline bound at feasible speeds"
        );
    }
    Ok(OptimalTsens {
        value,
        within_practical_range: config.practical_t_sens(value),
    })
}

/// Slowest deadline-feasible speed, which minimizes the upper-bound energy:
/// 4(L - 2e) / T_max, in m/s.
pub fn optimal_speed(config: &MissionConfig) -> f64 {
    config.path_length() / config.t_max
}

/// Window-maximum distances and link gains for the communication periods
/// 2..=N_D+1 of the optimal schedule at speed `v`.
pub fn period_links(
    config: &MissionConfig,
    speed: f64,
    model: &ChannelModel,
    realization: &ChannelRealization,
    n_grid: usize,
) -> Result<Vec<PeriodLink>, PlannerError> {
    let t_sens = optimal_t_sens(speed, config)?.value;
    let plan = SchedulePlan::new(config, speed, t_sens, 1.0)?;
    (2..=config.min_cycles + 1)
        .map(|k| {
            Ok(PeriodLink {
                d_max: max_distance_in_window(k, &plan, config, n_grid)?,
                mu: link_mu(model, realization.h_mag_sq(k).map_err(SolverError::from)?),
            })
        })
        .collect()
}

/// Minimal upper-bound energy: the closed form evaluated at the optimal
/// speed and sensing period, in J.
pub fn min_upper_bound_energy(
    config: &MissionConfig,
    params: &MechanicalParams,
    links: &[PeriodLink],
    payload: &FramePayload,
    bandwidth: f64,
) -> Result<f64, PlannerError> {
    let v_star = optimal_speed(config);
    let path = config.path_length();
    let cycles = config.min_cycles as f64;
    if links.len() != config.min_cycles as usize {
        return Err(PlannerError::Energy(EnergyError::LinkCountMismatch {
            expected: config.min_cycles as usize,
            got: links.len(),
        }));
    }
    let x = crate::power::xi(config, payload, bandwidth);
    let d_sum: f64 = links.iter().map(|l| l.d_max * l.d_max / l.mu).sum();
    let half_span = config.side_length - 2.0 * config.inset;
    let mech = (0.5 * params.air_resistance * v_star * v_star + params.friction) * path;
    let lidar = cycles * params.lidar_energy_per_cycle;
    let comm = config.t_max / cycles * ((4.0 * x * half_span / config.t_max).exp2() - 1.0) * d_sum;
    Ok(mech + lidar + comm)
}

/// How a sweep samples the channel per grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelSampling {
    /// `|h_k|^2 = 1` everywhere.
    Deterministic,
    /// Fresh Rician draws keyed by the model seed and the period index.
    Rician,
}

impl ChannelSampling {
    fn realize(&self, model: &ChannelModel, periods: usize) -> ChannelRealization {
        match self {
            ChannelSampling::Deterministic => ChannelRealization::deterministic(periods),
            ChannelSampling::Rician => ChannelRealization::sample(model, periods),
        }
    }
}

/// One solved grid point of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub breakdown: EnergyBreakdown,
    /// Exact floor-based period count of the schedule.
    pub periods: u32,
    /// The continuous period-count approximation 4(L-2e)/(v t_sens).
    pub periods_approx: f64,
    pub speed: f64,
    pub t_sens: f64,
}

/// A grid point: solved, or the error that stopped it.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub axis_value: f64,
    pub outcome: Result<SweepPoint, String>,
}

/// A completed sweep over one axis.
#[derive(Debug, Clone)]
pub struct SweepTable {
    pub axis: &'static str,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    /// True when every solved pair of consecutive rows has non-increasing
    /// total energy.
    pub fn total_energy_non_increasing(&self) -> bool {
        let totals: Vec<f64> = self
            .rows
            .iter()
            .filter_map(|r| r.outcome.as_ref().ok().map(|p| p.breakdown.total))
            .collect();
        totals.windows(2).all(|w| w[1] <= w[0])
    }

    pub fn point(&self, axis_value: f64) -> Option<&SweepPoint> {
        self.rows
            .iter()
            .find(|r| r.axis_value == axis_value)
            .and_then(|r| r.outcome.as_ref().ok())
    }
}

fn validate_grid(grid: &[f64]) -> Result<(), PlannerError> {
    if grid.is_empty() || !grid.windows(2).all(|w| w[0] < w[1]) {
        return Err(PlannerError::BadGrid);
    }
    Ok(())
}

/// Sweep the sensing period at fixed speed, duty ratio 1.
#[allow(clippy::too_many_arguments)]
pub fn sweep_t_sens(
    grid: &[f64],
    speed: f64,
    config: &MissionConfig,
    model: &ChannelModel,
    params: &MechanicalParams,
    payload: &FramePayload,
    sampling: ChannelSampling,
    n_sub: u32,
    tol: f64,
) -> Result<SweepTable, PlannerError> {
    validate_grid(grid)?;
    if !(speed > 0.0) {
        return Err(PlannerError::NonPositiveSpeed(speed));
    }
    let rows: Vec<SweepRow> = grid
        .par_iter()
        .map(|&t_sens| SweepRow {
            axis_value: t_sens,
            outcome: solve_point(
                config, speed, t_sens, model, params, payload, sampling, n_sub, tol,
            )
            .map_err(|e| e.to_string()),
        })
        .collect();
    Ok(SweepTable {
        axis: "t_sens",
        rows,
    })
}

/// Sweep the arena side length; each point runs at its own optimal speed
/// and sensing period.
#[allow(clippy::too_many_arguments)]
pub fn sweep_area(
    l_grid: &[f64],
    template: &MissionConfig,
    model: &ChannelModel,
    params: &MechanicalParams,
    payload: &FramePayload,
    sampling: ChannelSampling,
    n_sub: u32,
    tol: f64,
) -> Result<SweepTable, PlannerError> {
    validate_grid(l_grid)?;
    let rows: Vec<SweepRow> = l_grid
        .par_iter()
        .map(|&side| SweepRow {
            axis_value: side,
            outcome: (|| -> Result<SweepPoint, PlannerError> {
                let cfg = MissionConfig::new(
                    side,
                    template.inset,
                    template.t_max,
                    template.min_cycles,
                    template.t_sens_range,
                )?;
                let v = optimal_speed(&cfg);
                let t_sens = optimal_t_sens(v, &cfg)?.value;
                solve_point(
                    &cfg, v, t_sens, model, params, payload, sampling, n_sub, tol,
                )
            })()
            .map_err(|e| e.to_string()),
        })
        .collect();
    Ok(SweepTable {
        axis: "side_length",
        rows,
    })
}

/// Sweep the exploration speed; each point runs at its own optimal sensing
/// period.
#[allow(clippy::too_many_arguments)]
pub fn sweep_speed(
    v_grid: &[f64],
    config: &MissionConfig,
    model: &ChannelModel,
    params: &MechanicalParams,
    payload: &FramePayload,
    sampling: ChannelSampling,
    n_sub: u32,
    tol: f64,
) -> Result<SweepTable, PlannerError> {
    validate_grid(v_grid)?;
    let rows: Vec<SweepRow> = v_grid
        .par_iter()
        .map(|&v| SweepRow {
            axis_value: v,
            outcome: (|| -> Result<SweepPoint, PlannerError> {
                let t_sens = optimal_t_sens(v, config)?.value;
                solve_point(
                    config, v, t_sens, model, params, payload, sampling, n_sub, tol,
                )
            })()
            .map_err(|e| e.to_string()),
        })
        .collect();
    Ok(SweepTable {
        axis: "speed",
        rows,
    })
}

#[allow(clippy::too_many_arguments)]
fn solve_point(
    config: &MissionConfig,
    speed: f64,
    t_sens: f64,
    model: &ChannelModel,
    params: &MechanicalParams,
    payload: &FramePayload,
    sampling: ChannelSampling,
    n_sub: u32,
    tol: f64,
) -> Result<SweepPoint, PlannerError> {
    let plan = SchedulePlan::new(config, speed, t_sens, 1.0)?;
    let realization = sampling.realize(model, plan.periods as usize + 1);
    let powers = solve_mission_powers(&plan, config, model, &realization, payload, n_sub, tol)?;
    let breakdown = total_energy(&plan, &powers, params, config)?;
    Ok(SweepPoint {
        breakdown,
        periods: plan.periods,
        periods_approx: config.path_length() / (speed * t_sens),
        speed,
        t_sens,
    })
}
