//! Synthetic fence world, ray-cast 2D LiDAR and noisy odometry.
//!
//! The world is the four fence segments of a square arena. Scans cast 360
//! rays at one-degree resolution, measured in the world frame, and add a
//! Gaussian range error per angle. All randomness is keyed by
//! `(seed, period, angle)`, so scans generated in any order — or in
//! parallel — are bit-identical to sequential generation.

use crate::rng::{stream, Domain};
use rand::Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

/// Rays per 360-degree sweep, one per integer degree.
pub const SCAN_ANGLES: usize = 360;
/// Odometry dimension: three accelerations plus three angular velocities.
pub const ODOM_DIM: usize = 6;

#[derive(Debug, Error)]
pub enum WorldError {
    #[error("side length must be positive, got {0}")]
    NonPositiveSide(f64),
    #[error("robot position ({x}, {y}) is not strictly inside the fence")]
    OutsideWorld { x: f64, y: f64 },
    #[error("ray at {angle_deg} deg from ({x}, {y}) does not hit the fence")]
    RayEscaped { x: f64, y: f64, angle_deg: usize },
    #[error("invalid noise model: {0}")]
    InvalidNoise(String),
}

/// A fence segment between two planar points, in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub a: [f64; 2],
    pub b: [f64; 2],
}

/// Closed square fence with a point-occupancy query.
#[derive(Debug, Clone, PartialEq)]
pub struct WorldMap {
    side: f64,
    segments: Vec<Segment>,
    resolution_hint: f64,
}

/// Default half-width used by the occupancy query, in meters.
const DEFAULT_RESOLUTION_HINT: f64 = 0.05;

/// Build the closed square fence of side `side` with corners at the origin.
pub fn build_square_world(side: f64) -> Result<WorldMap, WorldError> {
    if !(side > 0.0 && side.is_finite()) {
        return Err(WorldError::NonPositiveSide(side));
    }
    let corners = [[0.0, 0.0], [side, 0.0], [side, side], [0.0, side]];
    let segments = (0..4)
        .map(|i| Segment {
            a: corners[i],
            b: corners[(i + 1) % 4],
        })
        .collect();
    Ok(WorldMap {
        side,
        segments,
        resolution_hint: DEFAULT_RESOLUTION_HINT,
    })
}

impl WorldMap {
    pub fn side(&self) -> f64 {
        self.side
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn resolution_hint(&self) -> f64 {
        self.resolution_hint
    }

    pub fn with_resolution_hint(mut self, hint: f64) -> Self {
        self.resolution_hint = hint;
        self
    }

    /// Occupancy of a point: 1 on the fence (within half a resolution hint),
    /// 0 elsewhere.
    pub fn occupancy(&self, x: f64, y: f64) -> u8 {
        let half = 0.5 * self.resolution_hint;
        let near = self
            .segments
            .iter()
            .any(|s| point_segment_distance([x, y], s) <= half);
        u8::from(near)
    }

    /// Whether a point lies strictly inside the fence.
    pub fn contains_interior(&self, p: [f64; 2]) -> bool {
        p[0] > 0.0 && p[0] < self.side && p[1] > 0.0 && p[1] < self.side
    }
}

fn point_segment_distance(p: [f64; 2], s: &Segment) -> f64 {
    let dx = s.b[0] - s.a[0];
    let dy = s.b[1] - s.a[1];
    let len_sq = dx * dx + dy * dy;
    let t = if len_sq == 0.0 {
        0.0
    } else {
        (((p[0] - s.a[0]) * dx + (p[1] - s.a[1]) * dy) / len_sq).clamp(0.0, 1.0)
    };
    let cx = s.a[0] + t * dx - p[0];
    let cy = s.a[1] + t * dy - p[1];
    (cx * cx + cy * cy).sqrt()
}

/// Full kinematic state of the robot at one period, 12 scalars. The mission
/// is planar, so every z component stays 0. Acceleration and angular
/// velocity are period-average rates, which makes corner turns observable
/// to the odometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RobotState {
    pub position: [f64; 3],
    pub velocity: [f64; 3],
    pub angular_velocity: [f64; 3],
    pub acceleration: [f64; 3],
}

impl RobotState {
    pub fn at_rest(position: [f64; 3]) -> Self {
        Self {
            position,
            velocity: [0.0; 3],
            angular_velocity: [0.0; 3],
            acceleration: [0.0; 3],
        }
    }
}

/// One 360-degree sweep: a range per integer degree, world frame.
#[derive(Debug, Clone, PartialEq)]
pub struct LidarScan {
    pub ranges: Vec<f64>,
    pub period: u32,
}

/// Measured acceleration and angular velocity for one period.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdometryReading {
    pub acceleration: [f64; 3],
    pub angular_velocity: [f64; 3],
    pub period: u32,
}

/// Gaussian sensing errors: per-angle LiDAR range standard deviations and a
/// full 6x6 odometry covariance, with the seed that keys every draw.
#[derive(Debug, Clone, PartialEq)]
pub struct SensorNoiseModel {
    lidar_std: Vec<f64>,
    odom_chol: [[f64; ODOM_DIM]; ODOM_DIM],
    pub seed: u64,
}

impl SensorNoiseModel {
    pub fn new(
        lidar_std: Vec<f64>,
        odom_cov: [[f64; ODOM_DIM]; ODOM_DIM],
        seed: u64,
    ) -> Result<Self, WorldError> {
        if lidar_std.len() != SCAN_ANGLES {
            return Err(WorldError::InvalidNoise(format!(
                "lidar_std needs {SCAN_ANGLES} entries, got {}",
                lidar_std.len()
            )));
        }
        if lidar_std.iter().any(|&s| s < 0.0 || !s.is_finite()) {
            return Err(WorldError::InvalidNoise(
                "lidar standard deviations must be non-negative".to_string(),
            ));
        }
        let odom_chol = cholesky_psd(&odom_cov).ok_or_else(|| {
            WorldError::InvalidNoise(
                "odometry covariance is not symmetric positive semidefinite".to_string(),
            )
        })?;
        Ok(Self {
            lidar_std,
            odom_chol,
            seed,
        })
    }

    /// Same standard deviation for every angle and an isotropic diagonal
    /// odometry covariance.
    pub fn isotropic(lidar_std: f64, odom_std: f64, seed: u64) -> Result<Self, WorldError> {
        let mut cov = [[0.0; ODOM_DIM]; ODOM_DIM];
        for (i, row) in cov.iter_mut().enumerate() {
            row[i] = odom_std * odom_std;
        }
        Self::new(vec![lidar_std; SCAN_ANGLES], cov, seed)
    }

    pub fn noiseless(seed: u64) -> Self {
        Self::isotropic(0.0, 0.0, seed).expect("zero noise is valid")
    }

    pub fn lidar_std(&self) -> &[f64] {
        &self.lidar_std
    }
}

/// Cholesky factor of a symmetric PSD matrix; `None` if the matrix is
/// indefinite or asymmetric. Zero diagonal blocks (noiseless components)
/// are accepted.
#[allow(clippy::needless_range_loop)] // triangular index loops
fn cholesky_psd(m: &[[f64; ODOM_DIM]; ODOM_DIM]) -> Option<[[f64; ODOM_DIM]; ODOM_DIM]> {
    let scale = m
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |acc, &v| acc.max(v.abs()))
        .max(1.0);
    let tol = 1e-12 * scale;
    for i in 0..ODOM_DIM {
        for j in (i + 1)..ODOM_DIM {
            if (m[i][j] - m[j][i]).abs() > tol {
                return None;
            }
        }
    }
    let mut l = [[0.0; ODOM_DIM]; ODOM_DIM];
    for j in 0..ODOM_DIM {
        let mut diag = m[j][j];
        for k in 0..j {
            diag -= l[j][k] * l[j][k];
        }
        if diag < -tol {
            return None;
        }
        if diag <= tol {
            // Semidefinite direction: the rest of the column must vanish.
            l[j][j] = 0.0;
            for i in (j + 1)..ODOM_DIM {
                let mut off = m[i][j];
                for k in 0..j {
                    off -= l[i][k] * l[j][k];
                }
                if off.abs() > tol {
                    return None;
                }
            }
            continue;
        }
        l[j][j] = diag.sqrt();
        for i in (j + 1)..ODOM_DIM {
            let mut off = m[i][j];
            for k in 0..j {
                off -= l[i][k] * l[j][k];
            }
            l[i][j] = off / l[j][j];
        }
    }
    Some(l)
}

/// Exact range from `origin` along the direction of `angle_deg` (degrees,
/// world frame) to the nearest fence segment; `None` if the ray escapes.
pub fn exact_range(origin: [f64; 2], angle_deg: usize, world: &WorldMap) -> Option<f64> {
    let theta = (angle_deg as f64).to_radians();
    let dir = [theta.cos(), theta.sin()];
    let mut nearest: Option<f64> = None;
    for s in world.segments() {
        if let Some(t) = ray_segment_intersection(origin, dir, s) {
            nearest = Some(nearest.map_or(t, |n: f64| n.min(t)));
        }
    }
    nearest
}

/// Parametric ray-segment intersection; returns the ray parameter (= range
/// for a unit direction) of the hit, if any.
fn ray_segment_intersection(origin: [f64; 2], dir: [f64; 2], s: &Segment) -> Option<f64> {
    let ex = s.b[0] - s.a[0];
    let ey = s.b[1] - s.a[1];
    let denom = dir[0] * ey - dir[1] * ex;
    if denom.abs() < 1e-300 {
        return None; // parallel
    }
    let ax = s.a[0] - origin[0];
    let ay = s.a[1] - origin[1];
    let t = (ax * ey - ay * ex) / denom; // along the ray
    let u = (ax * dir[1] - ay * dir[0]) / denom; // along the segment
    if t >= 0.0 && (0.0..=1.0).contains(&u) {
        Some(t)
    } else {
        None
    }
}

/// Cast a full 360-degree scan from the robot state and add the keyed
/// Gaussian range error; negative noisy ranges clamp to zero.
pub fn raycast_scan(
    state: &RobotState,
    world: &WorldMap,
    noise: &SensorNoiseModel,
    period: u32,
) -> Result<LidarScan, WorldError> {
    let origin = [state.position[0], state.position[1]];
    if !world.contains_interior(origin) {
        return Err(WorldError::OutsideWorld {
            x: origin[0],
            y: origin[1],
        });
    }
    let mut ranges = Vec::with_capacity(SCAN_ANGLES);
    for angle in 0..SCAN_ANGLES {
        let exact = exact_range(origin, angle, world).ok_or(WorldError::RayEscaped {
            x: origin[0],
            y: origin[1],
            angle_deg: angle,
        })?;
        let std = noise.lidar_std[angle];
        let noisy = if std > 0.0 {
            let z: f64 = stream(noise.seed, Domain::Lidar, &[period as u64, angle as u64])
                .sample(StandardNormal);
            (exact + std * z).max(0.0)
        } else {
            exact
        };
        ranges.push(noisy);
    }
    Ok(LidarScan { ranges, period })
}

/// Measure the previous state's acceleration and angular velocity, plus a
/// draw from the odometry covariance; deterministic per (seed, period).
#[allow(clippy::needless_range_loop)] // L z lower-triangular multiply
pub fn odometry_read(
    prev_state: &RobotState,
    noise: &SensorNoiseModel,
    period: u32,
) -> OdometryReading {
    let mut z = [0.0f64; ODOM_DIM];
    let mut rng = stream(noise.seed, Domain::Odometry, &[period as u64]);
    for slot in z.iter_mut() {
        *slot = rng.sample(StandardNormal);
    }
    // Correlated error = L z for the Cholesky factor L.
    let mut err = [0.0f64; ODOM_DIM];
    for i in 0..ODOM_DIM {
        for (j, &zj) in z.iter().enumerate().take(i + 1) {
            err[i] += noise.odom_chol[i][j] * zj;
        }
    }
    let a = prev_state.acceleration;
    let w = prev_state.angular_velocity;
    OdometryReading {
        acceleration: [a[0] + err[0], a[1] + err[1], a[2] + err[2]],
        angular_velocity: [w[0] + err[3], w[1] + err[4], w[2] + err[5]],
        period,
    }
}
