//! Map-reconstruction evaluation: local-to-global transforms, free-space
//! sampling, occupancy rasterization, and the Chamfer/cross-entropy losses
//! used as deterministic map-quality metrics.
//!
//! Scan ranges are recorded in the world frame (see [`crate::world`]), so a
//! pose's heading rotates a scan only when the caller models a rotated
//! sensor frame; mission datasets use heading 0 together with the estimated
//! position.

mod nn;

use crate::world::{LidarScan, OdometryReading, WorldMap};
use nn::KdTree;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MappingError {
    #[error("point cloud must be non-empty")]
    EmptyCloud,
    #[error("invalid map metric configuration: {0}")]
    InvalidConfig(String),
    #[error("occupancy threshold must lie in (0, 1), got {0}")]
    BadThreshold(f64),
    #[error("loss evaluation needs at least one scan cloud")]
    NoClouds,
}

/// A planar point cloud tagged with the sensing period it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    pub points: Vec<[f64; 2]>,
    pub period: u32,
}

/// Estimated (or ground-truth) robot pose for one period.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoseEstimate {
    pub x: f64,
    pub y: f64,
    pub heading: f64,
}

/// Geometry of an occupancy grid: `origin` is the world position of the
/// lower-left corner of cell (0, 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub origin: [f64; 2],
    pub resolution: f64,
    pub width: usize,
    pub height: usize,
}

impl GridSpec {
    /// Grid covering a square world, shifted half a cell so the fence lines
    /// run through cell centers rather than cell boundaries.
    pub fn covering(world: &WorldMap, resolution: f64) -> Self {
        let half = 0.5 * resolution;
        let cells = (world.side() / resolution).round() as usize + 1;
        Self {
            origin: [-half, -half],
            resolution,
            width: cells,
            height: cells,
        }
    }

    pub fn cell_of(&self, p: [f64; 2]) -> Option<(usize, usize)> {
        let cx = ((p[0] - self.origin[0]) / self.resolution).floor();
        let cy = ((p[1] - self.origin[1]) / self.resolution).floor();
        if cx < 0.0 || cy < 0.0 || cx >= self.width as f64 || cy >= self.height as f64 {
            return None;
        }
        Some((cx as usize, cy as usize))
    }

    /// World-space bounding box of a cell (closed).
    pub fn cell_box(&self, cx: usize, cy: usize) -> ([f64; 2], [f64; 2]) {
        let lo = [
            self.origin[0] + cx as f64 * self.resolution,
            self.origin[1] + cy as f64 * self.resolution,
        ];
        let hi = [lo[0] + self.resolution, lo[1] + self.resolution];
        (lo, hi)
    }
}

/// Occupancy probabilities on a regular grid, row-major from cell (0, 0).
#[derive(Debug, Clone, PartialEq)]
pub struct OccupancyGrid {
    pub spec: GridSpec,
    probs: Vec<f64>,
}

impl OccupancyGrid {
    pub fn probability(&self, cx: usize, cy: usize) -> f64 {
        self.probs[cy * self.spec.width + cx]
    }

    /// Probability at a world point, if it falls on the grid.
    pub fn query(&self, p: [f64; 2]) -> Option<f64> {
        self.spec
            .cell_of(p)
            .map(|(cx, cy)| self.probability(cx, cy))
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probs
    }
}

/// Nearest-neighbor metric used by the Chamfer distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ChamferVariant {
    /// Mean Euclidean nearest-neighbor distance (both directions summed).
    #[default]
    Euclidean,
    /// Mean squared Euclidean nearest-neighbor distance.
    SquaredEuclidean,
}

/// Knobs of the map-quality losses.
#[derive(Debug, Clone, PartialEq)]
pub struct MapMetricsConfig {
    /// Weight of the classification loss in the combined loss.
    pub gamma: f64,
    /// Spacing of unoccupied samples along each ray, in meters.
    pub free_space_spacing: f64,
    /// Probability clamp for the cross-entropy terms.
    pub clamp_eps: f64,
    pub chamfer_variant: ChamferVariant,
    /// Normalize the classification loss by N_m + 1 (the printed form)
    /// instead of the number of summed periods.
    pub extra_period_norm: bool,
    /// Include j = i (a zero term) in the Chamfer neighbor window.
    pub neighbor_includes_self: bool,
}

impl Default for MapMetricsConfig {
    fn default() -> Self {
        Self {
            gamma: 1.0,
            free_space_spacing: 0.1,
            clamp_eps: 1e-7,
            chamfer_variant: ChamferVariant::Euclidean,
            extra_period_norm: true,
            neighbor_includes_self: true,
        }
    }
}

impl MapMetricsConfig {
    pub fn validate(&self) -> Result<(), MappingError> {
        if !(self.gamma >= 0.0) {
            return Err(MappingError::InvalidConfig(format!(
                "gamma must be non-negative, got {}",
                self.gamma
            )));
        }
        if !(self.free_space_spacing > 0.0) {
            return Err(MappingError::InvalidConfig(format!(
                "free-space spacing must be positive, got {}",
                self.free_space_spacing
            )));
        }
        if !(self.clamp_eps > 0.0 && self.clamp_eps < 0.5) {
            return Err(MappingError::InvalidConfig(format!(
                "clamp epsilon must lie in (0, 0.5), got {}",
                self.clamp_eps
            )));
        }
        Ok(())
    }
}

/// Transform a scan into world coordinates: each `(theta, r)` maps to
/// `pose + r * (cos(theta + heading), sin(theta + heading))`.
pub fn to_global(scan: &LidarScan, pose: &PoseEstimate) -> PointCloud {
    let points = scan
        .ranges
        .iter()
        .enumerate()
        .map(|(deg, &r)| {
            let theta = (deg as f64).to_radians() + pose.heading;
            [pose.x + r * theta.cos(), pose.y + r * theta.sin()]
        })
        .collect();
    PointCloud {
        points,
        period: scan.period,
    }
}

/// Unoccupied samples along each ray: radii `spacing, 2*spacing, ...`,
/// stopping half a spacing short of the return point so free samples never
/// crowd the surface the ray hit.
pub fn sample_free_space(scan: &LidarScan, pose: &PoseEstimate, spacing: f64) -> PointCloud {
    let mut points = Vec::new();
    for (deg, &r) in scan.ranges.iter().enumerate() {
        let theta = (deg as f64).to_radians() + pose.heading;
        let (sin, cos) = theta.sin_cos();
        let count = (r / spacing - 0.5).floor();
        if count < 1.0 {
            continue;
        }
        for i in 1..=count as usize {
            let radius = i as f64 * spacing;
            points.push([pose.x + radius * cos, pose.y + radius * sin]);
        }
    }
    PointCloud {
        points,
        period: scan.period,
    }
}

/// Number of free-space samples `sample_free_space` yields for one range.
pub fn free_samples_per_ray(range: f64, spacing: f64) -> usize {
    let count = (range / spacing - 0.5).floor();
    if count < 1.0 {
        0
    } else {
        count as usize
    }
}

/// Rasterize occupied and free points into cell probabilities
/// `(hits + 1) / (hits + misses + 2)`; cells nobody observed stay at 1/2.
pub fn rasterize_occupancy(
    clouds: &[PointCloud],
    free: &[PointCloud],
    spec: GridSpec,
) -> OccupancyGrid {
    let mut hits = vec![0u32; spec.width * spec.height];
    let mut misses = vec![0u32; spec.width * spec.height];
    for cloud in clouds {
        for &p in &cloud.points {
            if let Some((cx, cy)) = spec.cell_of(p) {
                hits[cy * spec.width + cx] += 1;
            }
        }
    }
    for cloud in free {
        for &p in &cloud.points {
            if let Some((cx, cy)) = spec.cell_of(p) {
                misses[cy * spec.width + cx] += 1;
            }
        }
    }
    let probs = hits
        .iter()
        .zip(misses.iter())
        .map(|(&h, &m)| (h as f64 + 1.0) / ((h + m) as f64 + 2.0))
        .collect();
    OccupancyGrid { spec, probs }
}

/// Symmetric Chamfer distance: mean nearest-neighbor distance from `a` to
/// `b` plus the same from `b` to `a`, in meters (Euclidean variant).
pub fn chamfer_distance(a: &PointCloud, b: &PointCloud) -> Result<f64, MappingError> {
    chamfer_distance_with(a, b, ChamferVariant::Euclidean)
}

pub fn chamfer_distance_with(
    a: &PointCloud,
    b: &PointCloud,
    variant: ChamferVariant,
) -> Result<f64, MappingError> {
    if a.points.is_empty() || b.points.is_empty() {
        return Err(MappingError::EmptyCloud);
    }
    Ok(directed_mean(&a.points, &b.points, variant) + directed_mean(&b.points, &a.points, variant))
}

fn directed_mean(from: &[[f64; 2]], to: &[[f64; 2]], variant: ChamferVariant) -> f64 {
    let tree = KdTree::build(to);
    let sum: f64 = from
        .iter()
        .map(|&p| {
            let d_sq = tree.nearest_sq(p);
            match variant {
                ChamferVariant::Euclidean => d_sq.sqrt(),
                ChamferVariant::SquaredEuclidean => d_sq,
            }
        })
        .sum();
    sum / from.len() as f64
}

/// The three map-reconstruction losses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapLosses {
    /// Cross-entropy of occupied points against 1 and free samples against 0.
    pub classification: f64,
    /// Summed Chamfer distance of each cloud against its temporal neighbors.
    pub chamfer: f64,
    /// chamfer + gamma * classification.
    pub total: f64,
}

/// Evaluate the reconstruction losses of a grid against per-period clouds.
///
/// `clouds[i]` and `free[i]` must describe the same period. The neighbor
/// window spans `j` in `[i - w, i + w]` clipped to the cloud range.
pub fn map_losses(
    grid: &OccupancyGrid,
    clouds: &[PointCloud],
    free: &[PointCloud],
    config: &MapMetricsConfig,
    neighbor_window: usize,
) -> Result<MapLosses, MappingError> {
    config.validate()?;
    if clouds.is_empty() {
        return Err(MappingError::NoClouds);
    }
    if free.len() != clouds.len() {
        return Err(MappingError::InvalidConfig(format!(
            "{} scan clouds but {} free clouds",
            clouds.len(),
            free.len()
        )));
    }

    let eps = config.clamp_eps;
    let bce = |p: f64, label: f64| -> f64 {
        let p = p.clamp(eps, 1.0 - eps);
        -(label * p.ln() + (1.0 - label) * (1.0 - p).ln())
    };
    let cloud_bce = |cloud: &PointCloud, label: f64| -> f64 {
        if cloud.points.is_empty() {
            return 0.0;
        }
        let sum: f64 = cloud
            .points
            .iter()
            .map(|&p| bce(grid.query(p).unwrap_or(0.5), label))
            .sum();
        sum / cloud.points.len() as f64
    };

    let mut cls = 0.0;
    for (occ, unocc) in clouds.iter().zip(free.iter()) {
        cls += cloud_bce(occ, 1.0) + cloud_bce(unocc, 0.0);
    }
    let norm = if config.extra_period_norm {
        clouds.len() as f64 + 1.0
    } else {
        clouds.len() as f64
    };
    cls /= norm;

    let mut ch = 0.0;
    let n = clouds.len() as isize;
    let w = neighbor_window as isize;
    for i in 0..n {
        for j in (i - w).max(0)..=(i + w).min(n - 1) {
            // The printed window includes j = i, whose term is identically
            // zero; the flag drops it instead.
            if j == i && !config.neighbor_includes_self {
                continue;
            }
            ch += chamfer_distance_with(
                &clouds[i as usize],
                &clouds[j as usize],
                config.chamfer_variant,
            )?;
        }
    }

    Ok(MapLosses {
        classification: cls,
        chamfer: ch,
        total: ch + config.gamma * cls,
    })
}

/// Intersection-over-union of thresholded occupied cells against the cells
/// the fence actually crosses.
pub fn map_iou(
    grid: &OccupancyGrid,
    world: &WorldMap,
    threshold: f64,
) -> Result<f64, MappingError> {
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(MappingError::BadThreshold(threshold));
    }
    let spec = grid.spec;
    let mut intersection = 0usize;
    let mut union = 0usize;
    for cy in 0..spec.height {
        for cx in 0..spec.width {
            let predicted = grid.probability(cx, cy) > threshold;
            let (lo, hi) = spec.cell_box(cx, cy);
            let truth = world
                .segments()
                .iter()
                .any(|s| segment_intersects_box(s.a, s.b, lo, hi));
            if predicted || truth {
                union += 1;
            }
            if predicted && truth {
                intersection += 1;
            }
        }
    }
    if union == 0 {
        return Ok(0.0);
    }
    Ok(intersection as f64 / union as f64)
}

/// Segment-box intersection via the separating-axis test on a closed box.
fn segment_intersects_box(a: [f64; 2], b: [f64; 2], lo: [f64; 2], hi: [f64; 2]) -> bool {
    for axis in 0..2 {
        if a[axis].max(b[axis]) < lo[axis] || a[axis].min(b[axis]) > hi[axis] {
            return false;
        }
    }
    // Box corners must not all lie strictly on one side of the segment line.
    let dx = b[0] - a[0];
    let dy = b[1] - a[1];
    let side = |p: [f64; 2]| dx * (p[1] - a[1]) - dy * (p[0] - a[0]);
    let corners = [
        side([lo[0], lo[1]]),
        side([hi[0], lo[1]]),
        side([hi[0], hi[1]]),
        side([lo[0], hi[1]]),
    ];
    let all_pos = corners.iter().all(|&c| c > 0.0);
    let all_neg = corners.iter().all(|&c| c < 0.0);
    !(all_pos || all_neg)
}

/// Integrate odometry into pose estimates, starting from a known pose and
/// velocity. Positions integrate measured acceleration; headings integrate
/// measured angular velocity. Without noise this tracks the true path up to
/// the within-period timing of corner turns.
pub fn dead_reckon(
    initial: PoseEstimate,
    initial_velocity: [f64; 2],
    odometry: &[OdometryReading],
    t_sens: f64,
) -> Vec<PoseEstimate> {
    let mut poses = Vec::with_capacity(odometry.len());
    let mut pos = [initial.x, initial.y];
    let mut vel = initial_velocity;
    let mut heading = initial.heading;
    poses.push(initial);
    // odometry[i] measures the state of period i+1's predecessor; the first
    // reading describes the initial state and is consumed by the transition
    // to the second pose.
    for reading in odometry.iter().skip(1) {
        let a = [reading.acceleration[0], reading.acceleration[1]];
        let w = reading.angular_velocity[2];
        pos[0] += vel[0] * t_sens + 0.5 * a[0] * t_sens * t_sens;
        pos[1] += vel[1] * t_sens + 0.5 * a[1] * t_sens * t_sens;
        vel[0] += a[0] * t_sens;
        vel[1] += a[1] * t_sens;
        heading += w * t_sens;
        poses.push(PoseEstimate {
            x: pos[0],
            y: pos[1],
            heading,
        });
    }
    poses
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::world::build_square_world;

    fn scan_of(ranges: Vec<f64>, period: u32) -> LidarScan {
        LidarScan { ranges, period }
    }

    fn origin_pose() -> PoseEstimate {
        PoseEstimate {
            x: 0.0,
            y: 0.0,
            heading: 0.0,
        }
    }

    #[test]
    fn to_global_identity_and_rotation() {
        let mut ranges = vec![0.0; 360];
        ranges[0] = 1.0;
        let scan = scan_of(ranges, 1);

        let cloud = to_global(&scan, &origin_pose());
        assert!((cloud.points[0][0] - 1.0).abs() < 1e-15);
        assert!(cloud.points[0][1].abs() < 1e-15);

        let rotated = to_global(
            &scan,
            &PoseEstimate {
                x: 0.0,
                y: 0.0,
                heading: std::f64::consts::FRAC_PI_2,
            },
        );
        assert!(rotated.points[0][0].abs() < 1e-15);
        assert!((rotated.points[0][1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn to_global_round_trips_ranges() {
        let ranges: Vec<f64> = (0..360).map(|i| 0.5 + (i as f64) * 0.01).collect();
        let pose = PoseEstimate {
            x: 1.3,
            y: -0.7,
            heading: 0.41,
        };
        let cloud = to_global(&scan_of(ranges.clone(), 3), &pose);
        for (deg, p) in cloud.points.iter().enumerate() {
            let r = ((p[0] - pose.x).powi(2) + (p[1] - pose.y).powi(2)).sqrt();
            assert!(
                (r - ranges[deg]).abs() < 1e-12,
                "range mismatch at {deg}: {r}"
            );
        }
    }

    #[test]
    fn free_space_sampling_respects_endpoint_rule() {
        let mut ranges = vec![0.0; 360];
        ranges[0] = 1.0;
        ranges[90] = 0.3;
        let scan = scan_of(ranges.clone(), 1);
        let cloud = sample_free_space(&scan, &origin_pose(), 0.5);
        // r = 1.0, spacing 0.5: exactly one sample at radius 0.5.
        assert_eq!(cloud.points.len(), 1);
        assert!((cloud.points[0][0] - 0.5).abs() < 1e-15);
        // r = 0.3 < spacing: no samples on that ray.
        assert_eq!(free_samples_per_ray(0.3, 0.5), 0);

        // Counting oracle across the whole scan.
        let expect: usize = ranges.iter().map(|&r| free_samples_per_ray(r, 0.5)).sum();
        assert_eq!(cloud.points.len(), expect);
    }

    #[test]
    fn rasterization_applies_laplace_smoothing() {
        let spec = GridSpec {
            origin: [0.0, 0.0],
            resolution: 1.0,
            width: 2,
            height: 1,
        };
        let free = PointCloud {
            points: vec![[0.5, 0.5]; 10],
            period: 1,
        };
        let hit = PointCloud {
            points: vec![[1.5, 0.5]; 10],
            period: 1,
        };
        let grid = rasterize_occupancy(&[hit], &[free], spec);
        assert!((grid.probability(0, 0) - 1.0 / 12.0).abs() < 1e-15);
        assert!((grid.probability(1, 0) - 11.0 / 12.0).abs() < 1e-15);

        // Equal hits and misses balance to one half.
        let both = rasterize_occupancy(
            &[PointCloud {
                points: vec![[0.5, 0.5]; 7],
                period: 1,
            }],
            &[PointCloud {
                points: vec![[0.5, 0.5]; 7],
                period: 1,
            }],
            spec,
        );
        assert_eq!(both.probability(0, 0), 0.5);
    }

    #[test]
    fn chamfer_basics() {
        let a = PointCloud {
            points: vec![[0.0, 0.0]],
            period: 1,
        };
        let b = PointCloud {
            points: vec![[1.0, 0.0]],
            period: 2,
        };
        assert_eq!(chamfer_distance(&a, &a).unwrap(), 0.0);
        assert_eq!(chamfer_distance(&a, &b).unwrap(), 2.0);
        assert_eq!(
            chamfer_distance_with(&a, &b, ChamferVariant::SquaredEuclidean).unwrap(),
            2.0
        );
        let empty = PointCloud {
            points: vec![],
            period: 3,
        };
        assert!(chamfer_distance(&a, &empty).is_err());
    }

    #[test]
    fn uniform_half_probability_grid_gives_ln2_loss() {
        let spec = GridSpec {
            origin: [0.0, 0.0],
            resolution: 1.0,
            width: 4,
            height: 4,
        };
        // No observations anywhere: every cell sits at probability 1/2.
        let grid = rasterize_occupancy(&[], &[], spec);
        let occupied = PointCloud {
            points: vec![[0.5, 0.5], [1.5, 2.5]],
            period: 1,
        };
        let free = PointCloud {
            points: vec![[2.5, 2.5], [3.5, 0.5]],
            period: 1,
        };
        let cfg = MapMetricsConfig {
            extra_period_norm: false,
            ..MapMetricsConfig::default()
        };
        let losses = map_losses(&grid, &[occupied], &[free], &cfg, 1).unwrap();
        let ln2 = std::f64::consts::LN_2;
        assert!(
            (losses.classification - 2.0 * ln2).abs() < 1e-12,
            "per-point BCE at p = 1/2 is ln 2 for both labels; got {}",
            losses.classification
        );
        // A single cloud has no temporal neighbor.
        assert_eq!(losses.chamfer, 0.0);
        assert!((losses.total - (losses.chamfer + cfg.gamma * losses.classification)).abs() == 0.0);
    }

    #[test]
    fn gamma_zero_collapses_total_to_chamfer() {
        let spec = GridSpec {
            origin: [0.0, 0.0],
            resolution: 0.5,
            width: 8,
            height: 8,
        };
        let grid = rasterize_occupancy(&[], &[], spec);
        let c1 = PointCloud {
            points: vec![[0.2, 0.2], [1.0, 1.0]],
            period: 1,
        };
        let c2 = PointCloud {
            points: vec![[0.3, 0.2], [1.1, 1.0]],
            period: 2,
        };
        let f = PointCloud {
            points: vec![[2.0, 2.0]],
            period: 0,
        };
        let cfg = MapMetricsConfig {
            gamma: 0.0,
            ..MapMetricsConfig::default()
        };
        let losses = map_losses(&grid, &[c1, c2], &[f.clone(), f], &cfg, 1).unwrap();
        assert_eq!(losses.total, losses.chamfer);
        assert!(losses.chamfer > 0.0);
    }

    #[test]
    fn bce_values_stay_within_clamp_bounds() {
        let spec = GridSpec {
            origin: [0.0, 0.0],
            resolution: 1.0,
            width: 1,
            height: 1,
        };
        // Extreme grid: many hits -> probability near 1.
        let hits = PointCloud {
            points: vec![[0.5, 0.5]; 1000],
            period: 1,
        };
        let grid = rasterize_occupancy(std::slice::from_ref(&hits), &[], spec);
        let cfg = MapMetricsConfig::default();
        let losses = map_losses(
            &grid,
            &[hits],
            &[PointCloud {
                points: vec![[0.5, 0.5]],
                period: 1,
            }],
            &cfg,
            1,
        )
        .unwrap();
        let max_bce = -(cfg.clamp_eps.ln());
        assert!(losses.classification >= 0.0);
        assert!(losses.classification <= 2.0 * max_bce);
    }

    #[test]
    fn iou_of_exact_truth_grid_is_one() {
        let world = build_square_world(2.25).unwrap();
        let spec = GridSpec::covering(&world, 0.05);
        // Build the ground-truth grid directly from the fence cells.
        let mut hits = Vec::new();
        for cy in 0..spec.height {
            for cx in 0..spec.width {
                let (lo, hi) = spec.cell_box(cx, cy);
                let truth = world
                    .segments()
                    .iter()
                    .any(|s| segment_intersects_box(s.a, s.b, lo, hi));
                if truth {
                    let center = [0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1])];
                    hits.extend([center; 3]);
                }
            }
        }
        let grid = rasterize_occupancy(
            &[PointCloud {
                points: hits,
                period: 1,
            }],
            &[],
            spec,
        );
        assert_eq!(map_iou(&grid, &world, 0.5).unwrap(), 1.0);

        // Empty grid: nothing predicted.
        let empty = rasterize_occupancy(&[], &[], spec);
        assert_eq!(map_iou(&empty, &world, 0.5).unwrap(), 0.0);

        assert!(map_iou(&grid, &world, 0.0).is_err());
        assert!(map_iou(&grid, &world, 1.0).is_err());
    }

    #[test]
    fn dead_reckoning_tracks_straight_noiseless_motion() {
        let t = 0.1;
        let readings: Vec<OdometryReading> = (1..=5)
            .map(|k| OdometryReading {
                acceleration: [0.0; 3],
                angular_velocity: [0.0; 3],
                period: k,
            })
            .collect();
        let start = PoseEstimate {
            x: 0.45,
            y: 0.45,
            heading: 0.0,
        };
        let poses = dead_reckon(start, [1.0, 0.0], &readings, t);
        assert_eq!(poses.len(), 5);
        for (i, p) in poses.iter().enumerate() {
            assert!((p.x - (0.45 + i as f64 * 0.1)).abs() < 1e-12);
            assert!((p.y - 0.45).abs() < 1e-15);
        }
    }
}
