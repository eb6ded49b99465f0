//! Arena geometry and the robot's inset-square trajectory.
//!
//! The task area is an axis-aligned square of side `L` with the access point
//! at the corner `(0, 0)`. The robot follows the square perimeter inset by
//! `e` on each side, starting at `(e, e)` and moving counterclockwise along
//! `+x` first, at constant speed. The robot-to-AP distance is the four-piece
//! closed form induced by that path; all schedule bookkeeping (period count,
//! per-period communication windows) lives here as well.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("invalid mission geometry: {0}")]
    InvalidConfig(String),
    #[error("speed must be positive, got {0}")]
    NonPositiveSpeed(f64),
    #[error("sensing period must be positive, got {0}")]
    NonPositiveSensingPeriod(f64),
    #[error("duty ratio must lie in (0, 1], got {0}")]
    DutyRatioOutOfRange(f64),
    #[error("time {t} outside mission duration [0, {t_end}]")]
    TimeOutOfRange { t: f64, t_end: f64 },
    #[error("period index {k} outside communication range 2..={max}")]
    PeriodIndexOutOfRange { k: u32, max: u32 },
    #[error("distance grid needs at least 2 points, got {0}")]
    GridTooSmall(usize),
}

/// Mission-level geometry and timing constraints.
///
/// `side_length` and `inset` are in meters, `t_max` in seconds.
/// `min_cycles` is the minimum number of LiDAR sensing cycles the task must
/// contain; `t_sens_range` is the practical range of sensing periods the
/// LiDAR hardware supports, in seconds.
#[derive(Debug, Clone, PartialEq)]
pub struct MissionConfig {
    pub side_length: f64,
    pub inset: f64,
    pub t_max: f64,
    pub min_cycles: u32,
    pub t_sens_range: (f64, f64),
}

impl MissionConfig {
    pub fn new(
        side_length: f64,
        inset: f64,
        t_max: f64,
        min_cycles: u32,
        t_sens_range: (f64, f64),
    ) -> Result<Self, GeometryError> {
        let cfg = Self {
            side_length,
            inset,
            t_max,
            min_cycles,
            t_sens_range,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        let err = |msg: String| Err(GeometryError::InvalidConfig(msg));
        for (name, v) in [
            ("side_length", self.side_length),
            ("inset", self.inset),
            ("t_max", self.t_max),
            ("t_sens_range lower bound", self.t_sens_range.0),
            ("t_sens_range upper bound", self.t_sens_range.1),
        ] {
            if !v.is_finite() {
                return err(format!("{name} must be finite, got {v}"));
            }
        }
        if !(self.inset > 0.0) {
            return err(format!("inset must be positive, got {}", self.inset));
        }
        if !(self.side_length > 2.0 * self.inset) {
            return err(format!(
                "side length {} must exceed twice the inset {}",
                self.side_length, self.inset
            ));
        }
        if !(self.t_max > 0.0) {
            return err(format!("t_max must be positive, got {}", self.t_max));
        }
        if self.min_cycles < 1 {
            return err("min_cycles must be at least 1".to_string());
        }
        let (lo, hi) = self.t_sens_range;
        if !(lo > 0.0 && lo <= hi) {
            return err(format!(
                "sensing-period range ({lo}, {hi}) must satisfy 0 < lo <= hi"
            ));
        }
        Ok(())
    }

    /// Length of one full loop of the inset square: 4(L - 2e), in meters.
    pub fn path_length(&self) -> f64 {
        4.0 * (self.side_length - 2.0 * self.inset)
    }

    /// Whether a sensing period falls in the practical hardware range.
    pub fn practical_t_sens(&self, t_sens: f64) -> bool {
        t_sens >= self.t_sens_range.0 && t_sens <= self.t_sens_range.1
    }
}

/// A concrete schedule: speed, sensing period, communication duty ratio and
/// the period count they imply.
///
/// The robot runs `periods` full sensing cycles and occupies an extra
/// `(periods + 1)`-th period to transmit the last cycle's data.
#[derive(Debug, Clone, PartialEq)]
pub struct SchedulePlan {
    pub speed: f64,
    pub t_sens: f64,
    pub rho: f64,
    pub periods: u32,
    pub path_length: f64,
}

impl SchedulePlan {
    pub fn new(
        config: &MissionConfig,
        speed: f64,
        t_sens: f64,
        rho: f64,
    ) -> Result<Self, GeometryError> {
        if !(rho > 0.0 && rho <= 1.0) {
            return Err(GeometryError::DutyRatioOutOfRange(rho));
        }
        let periods = period_count(config, speed, t_sens)?;
        Ok(Self {
            speed,
            t_sens,
            rho,
            periods,
            path_length: config.path_length(),
        })
    }

    /// Communication time per period: rho * t_sens, in seconds.
    pub fn comm_time(&self) -> f64 {
        self.rho * self.t_sens
    }

    /// Time the robot spends in motion: path length / speed, in seconds.
    pub fn travel_time(&self) -> f64 {
        self.path_length / self.speed
    }

    /// Communication window of the k-th period, k in 2..=periods+1.
    ///
    /// The window starts when the period starts and spans the first `rho`
    /// fraction of it. The final period's window keeps the same length as
    /// all others.
    pub fn comm_window(&self, k: u32) -> Result<(f64, f64), GeometryError> {
        if k < 2 || k > self.periods + 1 {
            return Err(GeometryError::PeriodIndexOutOfRange {
                k,
                max: self.periods + 1,
            });
        }
        let start = (k as f64 - 1.0) * self.t_sens;
        Ok((start, start + self.comm_time()))
    }
}

/// Relative slack under which a near-integer period ratio is snapped to the
/// integer before flooring. Decimal mission parameters (speeds like 1.91,
/// periods like 0.1 s) are not binary-exact, so exact-division schedules
/// would otherwise lose a whole period to representation error.
const PERIOD_SNAP_REL: f64 = 1e-9;

/// Number of full sensing periods: floor(4(L - 2e) / (v * t_sens)).
pub fn period_count(config: &MissionConfig, speed: f64, t_sens: f64) -> Result<u32, GeometryError> {
    config.validate()?;
    if !(speed > 0.0) {
        return Err(GeometryError::NonPositiveSpeed(speed));
    }
    if !(t_sens > 0.0) {
        return Err(GeometryError::NonPositiveSensingPeriod(t_sens));
    }
    let ratio = config.path_length() / (speed * t_sens);
    let snapped = ratio.round();
    let floored = if (ratio - snapped).abs() <= PERIOD_SNAP_REL * ratio.max(1.0) {
        snapped
    } else {
        ratio.floor()
    };
    if floored > u32::MAX as f64 {
        return Err(GeometryError::InvalidConfig(format!(
            "{floored} sensing periods do not fit a mission schedule"
        )));
    }
    Ok(floored as u32)
}

/// Robot position at mission time `t`, piecewise linear on the inset square.
pub fn robot_position(
    t: f64,
    config: &MissionConfig,
    speed: f64,
) -> Result<[f64; 2], GeometryError> {
    let leg = leg_length(config, speed)?;
    let t_end = 4.0 * leg;
    if !(0.0..=t_end).contains(&t) {
        return Err(GeometryError::TimeOutOfRange { t, t_end });
    }
    let e = config.inset;
    let far = config.side_length - config.inset;
    let v = speed;
    Ok(if t < leg {
        [e + v * t, e]
    } else if t < 2.0 * leg {
        [far, e + v * (t - leg)]
    } else if t < 3.0 * leg {
        [far - v * (t - 2.0 * leg), far]
    } else {
        [e, far - v * (t - 3.0 * leg)]
    })
}

/// Distance from the robot to the access point at `(0, 0)` at time `t`.
///
/// Evaluates the four-piece closed form for the counterclockwise inset
/// square; continuous in `t` and equal to `|robot_position(t)|`.
pub fn distance_to_ap(t: f64, config: &MissionConfig, speed: f64) -> Result<f64, GeometryError> {
    let leg = leg_length(config, speed)?;
    let t_end = 4.0 * leg;
    if !(0.0..=t_end).contains(&t) {
        return Err(GeometryError::TimeOutOfRange { t, t_end });
    }
    let l = config.side_length;
    let e = config.inset;
    let v = speed;
    let sq = |x: f64| x * x;
    let d2 = if t < leg {
        sq(v * t + e) + sq(e)
    } else if t < 2.0 * leg {
        sq(v * t - l + 3.0 * e) + sq(l - e)
    } else if t < 3.0 * leg {
        sq(3.0 * l - 5.0 * e - v * t) + sq(l - e)
    } else {
        sq(4.0 * l - 7.0 * e - v * t) + sq(e)
    };
    Ok(d2.sqrt())
}

/// Distance to the AP with time clamped to the mission span.
///
/// Communication windows of the final period can extend past the moment the
/// robot reaches the end point; the robot then sits still, so the distance
/// holds its terminal value.
pub fn distance_to_ap_clamped(t: f64, config: &MissionConfig, speed: f64) -> f64 {
    let leg = config.path_length() / (4.0 * speed);
    let t_end = 4.0 * leg;
    let tc = t.clamp(0.0, t_end);
    distance_to_ap(tc, config, speed).expect("clamped time is always in range")
}

/// Mission times of the three interior trajectory corners.
pub fn piece_boundaries(config: &MissionConfig, speed: f64) -> [f64; 3] {
    let leg = config.path_length() / (4.0 * speed);
    [leg, 2.0 * leg, 3.0 * leg]
}

/// Maximum robot-to-AP distance over the k-th communication window.
///
/// Sampled on `n_grid` uniform points including both window endpoints,
/// augmented with any trajectory-corner instants inside the window. Each
/// distance piece is convex in `t`, so endpoints plus corners already carry
/// the true maximum; the grid guards the evaluation against future path
/// shapes.
pub fn max_distance_in_window(
    k: u32,
    plan: &SchedulePlan,
    config: &MissionConfig,
    n_grid: usize,
) -> Result<f64, GeometryError> {
    if n_grid < 2 {
        return Err(GeometryError::GridTooSmall(n_grid));
    }
    let (start, end) = plan.comm_window(k)?;
    let mut best = f64::NEG_INFINITY;
    for i in 0..n_grid {
        let t = start + (end - start) * (i as f64) / ((n_grid - 1) as f64);
        best = best.max(distance_to_ap_clamped(t, config, plan.speed));
    }
    for b in piece_boundaries(config, plan.speed) {
        if b > start && b < end {
            best = best.max(distance_to_ap_clamped(b, config, plan.speed));
        }
    }
    Ok(best)
}

fn leg_length(config: &MissionConfig, speed: f64) -> Result<f64, GeometryError> {
    config.validate()?;
    if !(speed > 0.0) {
        return Err(GeometryError::NonPositiveSpeed(speed));
    }
    Ok(config.path_length() / (4.0 * speed))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv_config() -> MissionConfig {
        MissionConfig::new(20.0, 0.45, 40.0, 400, (0.06, 0.2)).unwrap()
    }

    fn rel_close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1e-300)
    }

    #[test]
    fn config_rejects_degenerate_geometry() {
        assert!(MissionConfig::new(0.8, 0.45, 40.0, 400, (0.06, 0.2)).is_err());
        assert!(MissionConfig::new(20.0, 0.0, 40.0, 400, (0.06, 0.2)).is_err());
        assert!(MissionConfig::new(20.0, 0.45, 0.0, 400, (0.06, 0.2)).is_err());
        assert!(MissionConfig::new(20.0, 0.45, 40.0, 0, (0.06, 0.2)).is_err());
        assert!(MissionConfig::new(20.0, 0.45, 40.0, 400, (0.2, 0.06)).is_err());
    }

    #[test]
    fn period_count_matches_direct_evaluation() {
        // 4(20 - 0.9) / (1.91 * 0.1) = 76.4 / 0.191 = 400
        assert_eq!(period_count(&iv_config(), 1.91, 0.1).unwrap(), 400);

        // Exact division: 4(1.9 - 0.9) / (1.0 * 0.1) = 40
        let cfg = MissionConfig::new(1.9, 0.45, 40.0, 10, (0.06, 0.2)).unwrap();
        assert_eq!(period_count(&cfg, 1.0, 0.1).unwrap(), 40);

        // 4(2.25 - 0.9) / (0.27 * 0.1) = 5.4 / 0.027 = 200
        let cfg = MissionConfig::new(2.25, 0.45, 40.0, 100, (0.06, 0.2)).unwrap();
        assert_eq!(period_count(&cfg, 0.27, 0.1).unwrap(), 200);
    }

    #[test]
    fn period_count_snaps_derived_optimum() {
        // v* = 76.4/40 and t* = 76.4/(v* * 400) hit 399.999... in binary.
        let cfg = iv_config();
        let v = cfg.path_length() / cfg.t_max;
        let t = cfg.path_length() / (v * cfg.min_cycles as f64);
        assert_eq!(period_count(&cfg, v, t).unwrap(), 400);
    }

    #[test]
    fn period_count_rejects_bad_inputs() {
        let cfg = iv_config();
        assert!(period_count(&cfg, 0.0, 0.1).is_err());
        assert!(period_count(&cfg, 1.0, 0.0).is_err());
        assert!(period_count(&cfg, -1.0, 0.1).is_err());
    }

    #[test]
    fn position_traces_the_inset_square() {
        let cfg = iv_config();
        let v = 1.91;
        let leg = (cfg.side_length - 2.0 * cfg.inset) / v;

        let start = robot_position(0.0, &cfg, v).unwrap();
        assert_eq!(start, [0.45, 0.45]);

        let corner = robot_position(leg, &cfg, v).unwrap();
        assert!(rel_close(corner[0], 19.55, 1e-12));
        assert!(rel_close(corner[1], 0.45, 1e-12));

        let back = robot_position(4.0 * leg, &cfg, v).unwrap();
        assert!((back[0] - 0.45).abs() < 1e-9);
        assert!((back[1] - 0.45).abs() < 1e-9);

        assert!(robot_position(4.0 * leg + 1.0, &cfg, v).is_err());
        assert!(robot_position(-0.1, &cfg, v).is_err());
    }

    #[test]
    fn distance_matches_frozen_values() {
        let cfg = iv_config();
        let v = 1.91;
        let leg = (cfg.side_length - 2.0 * cfg.inset) / v;

        // sqrt(2) * 0.45 at the start
        let d0 = distance_to_ap(0.0, &cfg, v).unwrap();
        assert!(rel_close(d0, 0.6363961030678928, 1e-12), "got {d0}");

        // First corner: sqrt(e^2 + (L - e)^2)
        let d1 = distance_to_ap(leg, &cfg, v).unwrap();
        assert!(rel_close(d1, 19.555178342321504, 1e-9), "got {d1}");

        // Far corner: sqrt(2) * (L - e)
        let d2 = distance_to_ap(2.0 * leg, &cfg, v).unwrap();
        assert!(rel_close(d2, 27.64787514439401, 1e-9), "got {d2}");
    }

    #[test]
    fn distance_is_continuous_at_piece_boundaries() {
        let cfg = iv_config();
        let v = 1.91;
        for b in piece_boundaries(&cfg, v) {
            let left = distance_to_ap(b - 1e-9, &cfg, v).unwrap();
            let right = distance_to_ap(b + 1e-9, &cfg, v).unwrap();
            assert!((left - right).abs() < 1e-6, "jump at boundary {b}");
        }
    }

    #[test]
    fn clamped_distance_parks_at_end_point() {
        let cfg = iv_config();
        let v = 1.91;
        let t_end = cfg.path_length() / v;
        let terminal = distance_to_ap(t_end, &cfg, v).unwrap();
        assert_eq!(distance_to_ap_clamped(t_end + 5.0, &cfg, v), terminal);
    }

    #[test]
    fn window_max_handles_monotone_and_corner_cases() {
        let cfg = iv_config();
        let plan = SchedulePlan::new(&cfg, 1.91, 0.1, 1.0).unwrap();

        // Window on leg 1: distance increases, max at the right endpoint.
        let (_, end) = plan.comm_window(3).unwrap();
        let expect = distance_to_ap(end, &cfg, 1.91).unwrap();
        let got = max_distance_in_window(3, &plan, &cfg, 64).unwrap();
        assert!(rel_close(got, expect, 1e-12));

        // Window containing the far corner captures the global maximum.
        let far_t = 2.0 * (cfg.side_length - 2.0 * cfg.inset) / 1.91;
        let k = (far_t / plan.t_sens) as u32 + 1; // window [(k-1)t, ...] spans far_t
        let got = max_distance_in_window(k, &plan, &cfg, 64).unwrap();
        assert!(rel_close(got, 27.64787514439401, 1e-9), "got {got}");

        assert!(max_distance_in_window(1, &plan, &cfg, 64).is_err());
        assert!(max_distance_in_window(3, &plan, &cfg, 1).is_err());
    }

    #[test]
    fn comm_window_spans_rho_fraction() {
        let cfg = iv_config();
        let plan = SchedulePlan::new(&cfg, 1.91, 0.1, 0.25).unwrap();
        let (s, e) = plan.comm_window(2).unwrap();
        assert!((s - 0.1).abs() < 1e-15);
        assert!((e - 0.125).abs() < 1e-15);
        assert!(plan.comm_window(plan.periods + 2).is_err());
    }

    #[test]
    fn plan_rejects_bad_duty_ratio() {
        let cfg = iv_config();
        assert!(SchedulePlan::new(&cfg, 1.91, 0.1, 0.0).is_err());
        assert!(SchedulePlan::new(&cfg, 1.91, 0.1, 1.5).is_err());
    }
}
