//! Mission energy: mechanical power law, per-component totals, and the
//! closed-form upper bound with its analytic derivative.
//!
//! The upper bound replaces each communication window's distance profile by
//! its maximum, which admits a closed-form power per period and therefore a
//! closed-form total energy over speed. Its derivative is strictly positive
//! for positive speeds, so the minimal feasible speed is optimal.

use crate::channel::FramePayload;
use crate::geometry::{GeometryError, MissionConfig, SchedulePlan};
use crate::power::{xi, PowerSolution};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EnergyError {
    #[error("speed must be non-negative, got {0}")]
    NegativeSpeed(f64),
    #[error("speed must be positive, got {0}")]
    NonPositiveSpeed(f64),
    #[error("invalid mechanical parameters: {0}")]
    InvalidParams(String),
    #[error("power solution covers {got} periods, schedule needs {expected}")]
    PowerCountMismatch { expected: usize, got: usize },
    #[error("period link profile has {got} entries, upper bound needs {expected}")]
    LinkCountMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Motion and sensing cost coefficients.
///
/// `air_resistance` multiplies v^3/2, `friction` multiplies v;
/// `lidar_energy_per_cycle` is the fixed energy of one 360-degree sweep, in J.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MechanicalParams {
    pub air_resistance: f64,
    pub friction: f64,
    pub lidar_energy_per_cycle: f64,
}

impl MechanicalParams {
    pub fn new(
        air_resistance: f64,
        friction: f64,
        lidar_energy_per_cycle: f64,
    ) -> Result<Self, EnergyError> {
        for (name, v) in [
            ("air_resistance", air_resistance),
            ("friction", friction),
            ("lidar_energy_per_cycle", lidar_energy_per_cycle),
        ] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(EnergyError::InvalidParams(format!(
                    "{name} must be non-negative and finite, got {v}"
                )));
            }
        }
        Ok(Self {
            air_resistance,
            friction,
            lidar_energy_per_cycle,
        })
    }
}

/// Mission energy split by source, in J. `total` is the exact sum of the
/// three components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyBreakdown {
    pub comm: f64,
    pub lidar: f64,
    pub mech: f64,
    pub total: f64,
}

impl EnergyBreakdown {
    pub fn new(comm: f64, lidar: f64, mech: f64) -> Self {
        Self {
            comm,
            lidar,
            mech,
            total: comm + lidar + mech,
        }
    }
}

/// Average mechanical power at speed `v`: air_resistance * v^3 / 2 +
/// friction * v, in W.
pub fn mechanical_power(speed: f64, params: &MechanicalParams) -> Result<f64, EnergyError> {
    if speed < 0.0 {
        return Err(EnergyError::NegativeSpeed(speed));
    }
    Ok(0.5 * params.air_resistance * speed.powi(3) + params.friction * speed)
}

/// Total mission energy for a schedule with solved powers.
///
/// Communication sums `p_k * rho * t_sens` over periods 2..=N+1, LiDAR pays
/// per sensing cycle, and the mechanical term is `p_e * path / v`, which
/// equals `(air_resistance v^2 / 2 + friction) * path`.
pub fn total_energy(
    plan: &SchedulePlan,
    powers: &PowerSolution,
    params: &MechanicalParams,
    config: &MissionConfig,
) -> Result<EnergyBreakdown, EnergyError> {
    if powers.len() != plan.periods as usize {
        return Err(EnergyError::PowerCountMismatch {
            expected: plan.periods as usize,
            got: powers.len(),
        });
    }
    let comm = powers.powers.iter().sum::<f64>() * plan.comm_time();
    let lidar = plan.periods as f64 * params.lidar_energy_per_cycle;
    let mech = mechanical_power(plan.speed, params)? * config.path_length() / plan.speed;
    Ok(EnergyBreakdown::new(comm, lidar, mech))
}

/// Window maximum distance and link gain of one communication period; the
/// channel quantities the upper bound depends on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodLink {
    pub d_max: f64,
    pub mu: f64,
}

impl PeriodLink {
    fn d_sq_over_mu(&self) -> f64 {
        self.d_max * self.d_max / self.mu
    }
}

fn check_links(config: &MissionConfig, links: &[PeriodLink]) -> Result<f64, EnergyError> {
    if links.len() != config.min_cycles as usize {
        return Err(EnergyError::LinkCountMismatch {
            expected: config.min_cycles as usize,
            got: links.len(),
        });
    }
    Ok(links.iter().map(PeriodLink::d_sq_over_mu).sum())
}

/// Upper bound of the total energy at speed `v`, in J.
///
/// `links` holds one entry per communication period `k = 2..=N_D+1` with
/// window-maximum distances evaluated at the optimal sensing period for `v`.
pub fn total_energy_upper_bound(
    speed: f64,
    config: &MissionConfig,
    params: &MechanicalParams,
    links: &[PeriodLink],
    payload: &FramePayload,
    bandwidth: f64,
) -> Result<f64, EnergyError> {
    if !(speed > 0.0) {
        return Err(EnergyError::NonPositiveSpeed(speed));
    }
    let d_sum = check_links(config, links)?;
    let path = config.path_length();
    let cycles = config.min_cycles as f64;
    let x = xi(config, payload, bandwidth);
    let mech = (0.5 * params.air_resistance * speed * speed + params.friction) * path;
    let lidar = cycles * params.lidar_energy_per_cycle;
    let comm = path / (speed * cycles) * ((x * speed).exp2() - 1.0) * d_sum;
    Ok(mech + lidar + comm)
}

/// Analytic derivative of the upper-bound energy with respect to speed,
/// in J*s/m.
pub fn upper_bound_derivative(
    speed: f64,
    config: &MissionConfig,
    params: &MechanicalParams,
    links: &[PeriodLink],
    payload: &FramePayload,
    bandwidth: f64,
) -> Result<f64, EnergyError> {
    if !(speed > 0.0) {
        return Err(EnergyError::NonPositiveSpeed(speed));
    }
    let cycles = config.min_cycles as f64;
    let e = eta(speed, config, params, links, payload, bandwidth)?;
    Ok(config.path_length() * e / (cycles * speed * speed))
}

/// The derivative's sign-carrying factor
/// eta(v) =: v^3 k1 N_D + ((v xi ln2 - 1) 2^(xi v) + 1) * sum d_max^2 / mu.
///
/// Strictly increasing for v > 0 with eta(0+) = 0+, which makes the
/// upper-bound energy strictly increasing in speed.
pub fn eta(
    speed: f64,
    config: &MissionConfig,
    params: &MechanicalParams,
    links: &[PeriodLink],
    payload: &FramePayload,
    bandwidth: f64,
) -> Result<f64, EnergyError> {
    if !(speed > 0.0) {
        return Err(EnergyError::NonPositiveSpeed(speed));
    }
    let d_sum = check_links(config, links)?;
    let x = xi(config, payload, bandwidth);
    let cycles = config.min_cycles as f64;
    let growth = (speed * x * std::f64::consts::LN_2 - 1.0) * (x * speed).exp2() + 1.0;
    Ok(speed.powi(3) * params.air_resistance * cycles + growth * d_sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{link_mu, ChannelModel, ChannelRealization};
    use crate::geometry::max_distance_in_window;
    use crate::power::solve_mission_powers;

    fn iv_config() -> MissionConfig {
        MissionConfig::new(20.0, 0.45, 40.0, 400, (0.06, 0.2)).unwrap()
    }

    fn iv_params() -> MechanicalParams {
        MechanicalParams::new(0.003, 0.4, 0.025).unwrap()
    }

    fn iv_model() -> ChannelModel {
        ChannelModel::new(1e7, 0.125, 1.0, 1.0, 1e-14, 10.0, 8, 0).unwrap()
    }

    fn rel_close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs()
    }

    /// d_k,max and mu for periods 2..=N_D+1 at the optimal sensing period.
    fn iv_links(config: &MissionConfig, speed: f64) -> Vec<PeriodLink> {
        let t_sens = config.path_length() / (speed * config.min_cycles as f64);
        let plan = SchedulePlan::new(config, speed, t_sens, 1.0).unwrap();
        let mu = link_mu(&iv_model(), 1.0);
        (2..=config.min_cycles + 1)
            .map(|k| PeriodLink {
                d_max: max_distance_in_window(k, &plan, config, 64).unwrap(),
                mu,
            })
            .collect()
    }

    #[test]
    fn mechanical_power_matches_frozen_values() {
        let p = iv_params();
        assert_eq!(mechanical_power(1.0, &p).unwrap(), 0.4015);
        assert_eq!(mechanical_power(0.0, &p).unwrap(), 0.0);
        assert_eq!(mechanical_power(2.0, &p).unwrap(), 0.812);
        assert!(mechanical_power(-0.1, &p).is_err());
        assert!(MechanicalParams::new(-1.0, 0.4, 0.025).is_err());
    }

    #[test]
    fn total_energy_components_at_optimum() {
        let cfg = iv_config();
        let model = iv_model();
        let params = iv_params();
        let v = cfg.path_length() / cfg.t_max;
        let t_sens = cfg.path_length() / (v * cfg.min_cycles as f64);
        let plan = SchedulePlan::new(&cfg, v, t_sens, 1.0).unwrap();
        let real = ChannelRealization::deterministic(plan.periods as usize + 1);
        let payload = FramePayload::new(64, 64).unwrap();
        let powers = solve_mission_powers(&plan, &cfg, &model, &real, &payload, 64, 1e-9).unwrap();
        let breakdown = total_energy(&plan, &powers, &params, &cfg).unwrap();

        assert_eq!(breakdown.lidar, 10.0, "400 cycles at 25 mJ");
        assert!(
            (breakdown.mech - 30.978072260000005).abs() < 1e-9,
            "got {}",
            breakdown.mech
        );
        assert!(breakdown.comm > 0.0);
        assert_eq!(
            breakdown.total,
            breakdown.comm + breakdown.lidar + breakdown.mech
        );
    }

    #[test]
    fn total_energy_rejects_mismatched_powers() {
        let cfg = iv_config();
        let plan = SchedulePlan::new(&cfg, 1.91, 0.1, 1.0).unwrap();
        let powers = PowerSolution {
            powers: vec![1e-3; 3],
            tolerance: 1e-9,
            n_sub: 8,
        };
        assert!(matches!(
            total_energy(&plan, &powers, &iv_params(), &cfg),
            Err(EnergyError::PowerCountMismatch { .. })
        ));
    }

    #[test]
    fn empty_mission_has_zero_comm_energy() {
        // Degenerate config where one period does not fit: N_m = 0.
        let cfg = MissionConfig::new(1.9, 0.45, 40.0, 1, (0.06, 10.0)).unwrap();
        let plan = SchedulePlan::new(&cfg, 1.0, 8.0, 1.0).unwrap();
        assert_eq!(plan.periods, 0);
        let powers = PowerSolution {
            powers: vec![],
            tolerance: 1e-9,
            n_sub: 8,
        };
        let b = total_energy(&plan, &powers, &iv_params(), &cfg).unwrap();
        assert_eq!(b.comm, 0.0);
        assert_eq!(b.lidar, 0.0);
    }

    #[test]
    fn upper_bound_collapses_for_constant_links() {
        let cfg = iv_config();
        let params = MechanicalParams::new(0.0, 0.0, 0.0).unwrap();
        let payload = FramePayload::new(64, 64).unwrap();
        let d = 12.0;
        let mu = 989.4646840072049;
        let links = vec![PeriodLink { d_max: d, mu }; 400];
        let v = 1.91;
        let got = total_energy_upper_bound(v, &cfg, &params, &links, &payload, 1e7).unwrap();
        // All summands equal: the sum collapses to path/v * (2^(xi v) - 1) d^2/mu.
        let x = crate::power::xi(&cfg, &payload, 1e7);
        let expect = cfg.path_length() / v * ((x * v).exp2() - 1.0) * d * d / mu;
        assert!(rel_close(got, expect, 1e-12), "got {got} expect {expect}");
    }

    #[test]
    fn upper_bound_dominates_solved_total_energy() {
        let cfg = iv_config();
        let model = iv_model();
        let params = iv_params();
        let payload = FramePayload::new(64, 64).unwrap();
        let v = cfg.path_length() / cfg.t_max;
        let t_sens = cfg.path_length() / (v * cfg.min_cycles as f64);
        let plan = SchedulePlan::new(&cfg, v, t_sens, 1.0).unwrap();
        let real = ChannelRealization::deterministic(plan.periods as usize + 1);
        let powers = solve_mission_powers(&plan, &cfg, &model, &real, &payload, 64, 1e-9).unwrap();
        let actual = total_energy(&plan, &powers, &params, &cfg).unwrap().total;
        let links = iv_links(&cfg, v);
        let bound =
            total_energy_upper_bound(v, &cfg, &params, &links, &payload, model.bandwidth).unwrap();
        assert!(bound >= actual, "bound {bound} < actual {actual}");
    }

    #[test]
    fn derivative_matches_finite_differences_and_is_positive() {
        let cfg = iv_config();
        let params = iv_params();
        let payload = FramePayload::new(64, 64).unwrap();
        let links = iv_links(&cfg, cfg.path_length() / cfg.t_max);
        let e_at =
            |v: f64| total_energy_upper_bound(v, &cfg, &params, &links, &payload, 1e7).unwrap();
        for &v in &[0.05, 0.3, 1.91, 7.0, 20.0] {
            let analytic = upper_bound_derivative(v, &cfg, &params, &links, &payload, 1e7).unwrap();
            let h = 1e-5 * v;
            let fd = (e_at(v + h) - e_at(v - h)) / (2.0 * h);
            assert!(
                rel_close(analytic, fd, 1e-6),
                "v={v}: analytic {analytic} vs fd {fd}"
            );
            assert!(analytic > 0.0, "derivative must be positive at v={v}");
        }
    }

    #[test]
    fn eta_is_positive_near_zero_and_increasing() {
        let cfg = iv_config();
        let params = iv_params();
        let payload = FramePayload::new(64, 64).unwrap();
        let links = iv_links(&cfg, cfg.path_length() / cfg.t_max);
        let near_zero = eta(1e-9, &cfg, &params, &links, &payload, 1e7).unwrap();
        assert!(
            near_zero > 0.0 && near_zero < 1e-12,
            "eta(0+) = {near_zero}"
        );

        let mut prev = near_zero;
        for &v in &[0.01, 0.1, 1.0, 5.0, 20.0] {
            let e = eta(v, &cfg, &params, &links, &payload, 1e7).unwrap();
            assert!(e > prev, "eta must increase: eta({v}) = {e} <= {prev}");
            prev = e;
        }
    }

    #[test]
    fn link_count_is_enforced() {
        let cfg = iv_config();
        let params = iv_params();
        let payload = FramePayload::new(64, 64).unwrap();
        let links = vec![
            PeriodLink {
                d_max: 5.0,
                mu: 1.0
            };
            3
        ];
        assert!(matches!(
            total_energy_upper_bound(1.0, &cfg, &params, &links, &payload, 1e7),
            Err(EnergyError::LinkCountMismatch { .. })
        ));
    }
}
