//! Run configuration: a strict key=value file with unit-aware values.
//!
//! Values may carry a unit suffix matching the key's dimension ("10MHz",
//! "-110dBm/Hz", "0.45m", "25mJ"); bare numbers are SI base units. Missing
//! keys fall back to the default experiment parameters; unknown keys are
//! rejected with a nearest-key suggestion, since a silently ignored typo is
//! worse than a hard error.

use slam_energy_core::channel::{ChannelModel, FramePayload};
use slam_energy_core::energy::MechanicalParams;
use slam_energy_core::geometry::MissionConfig;
use slam_energy_core::mapping::{ChamferVariant, MapMetricsConfig};
use slam_energy_core::world::SensorNoiseModel;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("line {line}: expected key = value, got '{text}'")]
    Malformed { line: usize, text: String },
    #[error("line {line}: unknown key '{key}'{suggestion}")]
    UnknownKey {
        line: usize,
        key: String,
        suggestion: String,
    },
    #[error("line {line}: key '{key}': {reason}")]
    BadValue {
        line: usize,
        key: String,
        reason: String,
    },
    #[error("invalid configuration: {0}")]
    Invalid(String),
}

/// How map evaluation obtains per-period poses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoseSource {
    GroundTruth,
    DeadReckoning,
}

/// Fully resolved run configuration with every model's parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    // mission geometry
    pub side_length: f64,
    pub inset: f64,
    pub t_max: f64,
    pub min_cycles: u32,
    pub t_sens_min: f64,
    pub t_sens_max: f64,
    // channel
    pub bandwidth: f64,
    pub wavelength: f64,
    pub tx_gain: f64,
    pub rx_gain: f64,
    pub noise_psd: f64,
    pub rice_k: f64,
    pub nlos_paths: u32,
    // payload
    pub bits_per_range: u32,
    pub bits_per_odom: u32,
    // mechanics
    pub air_resistance: f64,
    pub friction: f64,
    pub lidar_energy: f64,
    // sensing noise
    pub lidar_noise_std: f64,
    pub odom_noise_std: f64,
    // map metrics
    pub gamma: f64,
    pub free_space_spacing: f64,
    pub clamp_eps: f64,
    pub grid_resolution: f64,
    pub iou_threshold: f64,
    pub chamfer_metric: ChamferVariant,
    pub cls_extra_period_norm: bool,
    pub chamfer_include_self: bool,
    pub pose_source: PoseSource,
    // schedule overrides (None: use the closed-form optimum)
    pub speed: Option<f64>,
    pub t_sens: Option<f64>,
    pub rho: f64,
    // run control
    pub seed: u64,
    pub n_sub_intervals: u32,
    pub deterministic_channel: bool,
    pub power_tolerance: f64,
    pub distance_grid: usize,
    pub out_dir: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            side_length: 20.0,
            inset: 0.45,
            t_max: 40.0,
            min_cycles: 400,
            t_sens_min: 0.06,
            t_sens_max: 0.2,
            bandwidth: 1e7,
            wavelength: 0.125,
            tx_gain: 1.0,
            rx_gain: 1.0,
            noise_psd: 1e-14,
            rice_k: 10.0,
            nlos_paths: 8,
            bits_per_range: 64,
            bits_per_odom: 64,
            air_resistance: 0.003,
            friction: 0.4,
            lidar_energy: 0.025,
            lidar_noise_std: 0.01,
            odom_noise_std: 0.01,
            gamma: 1.0,
            free_space_spacing: 0.1,
            clamp_eps: 1e-7,
            grid_resolution: 0.05,
            iou_threshold: 0.5,
            chamfer_metric: ChamferVariant::Euclidean,
            cls_extra_period_norm: true,
            chamfer_include_self: true,
            pose_source: PoseSource::GroundTruth,
            speed: None,
            t_sens: None,
            rho: 1.0,
            seed: 1,
            n_sub_intervals: 512,
            deterministic_channel: false,
            power_tolerance: 1e-9,
            distance_grid: 64,
            out_dir: None,
        }
    }
}

/// Value dimensions handled by the unit parser.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Dimension {
    Length,
    Time,
    Frequency,
    Energy,
    /// Power spectral density: W/Hz or dBm/Hz.
    Psd,
    /// Linear factor, optionally given in dB.
    Gain,
    Bare,
    Integer,
    Boolean,
    Keyword,
}

const KEYS: &[(&str, Dimension)] = &[
    ("side_length", Dimension::Length),
    ("inset", Dimension::Length),
    ("t_max", Dimension::Time),
    ("min_cycles", Dimension::Integer),
    ("t_sens_min", Dimension::Time),
    ("t_sens_max", Dimension::Time),
    ("bandwidth", Dimension::Frequency),
    ("wavelength", Dimension::Length),
    ("tx_gain", Dimension::Gain),
    ("rx_gain", Dimension::Gain),
    ("noise_psd", Dimension::Psd),
    ("rice_k", Dimension::Gain),
    ("nlos_paths", Dimension::Integer),
    ("bits_per_range", Dimension::Integer),
    ("bits_per_odom", Dimension::Integer),
    ("air_resistance", Dimension::Bare),
    ("friction", Dimension::Bare),
    ("lidar_energy", Dimension::Energy),
    ("lidar_noise_std", Dimension::Length),
    ("odom_noise_std", Dimension::Bare),
    ("gamma", Dimension::Bare),
    ("free_space_spacing", Dimension::Length),
    ("clamp_eps", Dimension::Bare),
    ("grid_resolution", Dimension::Length),
    ("iou_threshold", Dimension::Bare),
    ("chamfer_metric", Dimension::Keyword),
    ("cls_extra_period_norm", Dimension::Boolean),
    ("chamfer_include_self", Dimension::Boolean),
    ("pose_source", Dimension::Keyword),
    ("speed", Dimension::Bare),
    ("t_sens", Dimension::Time),
    ("rho", Dimension::Bare),
    ("seed", Dimension::Integer),
    ("n_sub_intervals", Dimension::Integer),
    ("deterministic_channel", Dimension::Boolean),
    ("power_tolerance", Dimension::Bare),
    ("distance_grid", Dimension::Integer),
    ("out_dir", Dimension::Keyword),
];

/// Load, apply defaults for missing keys, and validate.
pub fn load_config(path: &Path) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let mut cfg = RunConfig::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let stripped = raw.split('#').next().unwrap_or("").trim();
        if stripped.is_empty() {
            continue;
        }
        let Some((key, value)) = stripped.split_once('=') else {
            return Err(ConfigError::Malformed {
                line,
                text: stripped.to_string(),
            });
        };
        let key = key.trim();
        let value = value.trim();
        apply_key(&mut cfg, key, value, line)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn dimension_of(key: &str) -> Option<Dimension> {
    KEYS.iter().find(|(k, _)| *k == key).map(|(_, d)| *d)
}

fn apply_key(cfg: &mut RunConfig, key: &str, value: &str, line: usize) -> Result<(), ConfigError> {
    let Some(dim) = dimension_of(key) else {
        let suggestion = nearest_key(key)
            .map(|k| format!(" (did you mean '{k}'?)"))
            .unwrap_or_default();
        return Err(ConfigError::UnknownKey {
            line,
            key: key.to_string(),
            suggestion,
        });
    };
    let bad = |reason: String| ConfigError::BadValue {
        line,
        key: key.to_string(),
        reason,
    };
    let float = || parse_with_units(value, dim).map_err(&bad);
    let integer = || -> Result<u64, ConfigError> {
        value
            .parse::<u64>()
            .map_err(|_| bad(format!("expected a non-negative integer, got '{value}'")))
    };
    let boolean = || -> Result<bool, ConfigError> {
        match value {
            "true" | "yes" | "1" => Ok(true),
            "false" | "no" | "0" => Ok(false),
            _ => Err(bad(format!("expected true/false, got '{value}'"))),
        }
    };

    match key {
        "side_length" => cfg.side_length = float()?,
        "inset" => cfg.inset = float()?,
        "t_max" => cfg.t_max = float()?,
        "min_cycles" => cfg.min_cycles = integer()? as u32,
        "t_sens_min" => cfg.t_sens_min = float()?,
        "t_sens_max" => cfg.t_sens_max = float()?,
        "bandwidth" => cfg.bandwidth = float()?,
        "wavelength" => cfg.wavelength = float()?,
        "tx_gain" => cfg.tx_gain = float()?,
        "rx_gain" => cfg.rx_gain = float()?,
        "noise_psd" => cfg.noise_psd = float()?,
        "rice_k" => cfg.rice_k = float()?,
        "nlos_paths" => cfg.nlos_paths = integer()? as u32,
        "bits_per_range" => cfg.bits_per_range = integer()? as u32,
        "bits_per_odom" => cfg.bits_per_odom = integer()? as u32,
        "air_resistance" => cfg.air_resistance = float()?,
        "friction" => cfg.friction = float()?,
        "lidar_energy" => cfg.lidar_energy = float()?,
        "lidar_noise_std" => cfg.lidar_noise_std = float()?,
        "odom_noise_std" => cfg.odom_noise_std = float()?,
        "gamma" => cfg.gamma = float()?,
        "free_space_spacing" => cfg.free_space_spacing = float()?,
        "clamp_eps" => cfg.clamp_eps = float()?,
        "grid_resolution" => cfg.grid_resolution = float()?,
        "iou_threshold" => cfg.iou_threshold = float()?,
        "chamfer_metric" => {
            cfg.chamfer_metric = match value {
                "euclidean" => ChamferVariant::Euclidean,
                "squared" => ChamferVariant::SquaredEuclidean,
                _ => return Err(bad(format!("expected euclidean/squared, got '{value}'"))),
            }
        }
        "cls_extra_period_norm" => cfg.cls_extra_period_norm = boolean()?,
        "chamfer_include_self" => cfg.chamfer_include_self = boolean()?,
        "pose_source" => {
            cfg.pose_source = match value {
                "ground_truth" => PoseSource::GroundTruth,
                "dead_reckoning" => PoseSource::DeadReckoning,
                _ => {
                    return Err(bad(format!(
                        "expected ground_truth/dead_reckoning, got '{value}'"
                    )))
                }
            }
        }
        "speed" => cfg.speed = Some(float()?),
        "t_sens" => cfg.t_sens = Some(float()?),
        "rho" => cfg.rho = float()?,
        "seed" => cfg.seed = integer()?,
        "n_sub_intervals" => cfg.n_sub_intervals = integer()? as u32,
        "deterministic_channel" => cfg.deterministic_channel = boolean()?,
        "power_tolerance" => cfg.power_tolerance = float()?,
        "distance_grid" => cfg.distance_grid = integer()? as usize,
        "out_dir" => cfg.out_dir = Some(PathBuf::from(value)),
        _ => unreachable!("key table covers every match arm"),
    }
    Ok(())
}

/// Split a numeric token from its unit suffix and scale to SI base units.
/// The numeric part is the longest prefix that parses as f64, which keeps
/// exponent forms like "1e-14" intact next to unit letters like "m".
fn parse_with_units(value: &str, dim: Dimension) -> Result<f64, String> {
    let mut best: Option<(f64, &str)> = None;
    for end in (1..=value.len()).rev() {
        if !value.is_char_boundary(end) {
            continue;
        }
        if let Ok(num) = value[..end].parse::<f64>() {
            best = Some((num, value[end..].trim()));
            break;
        }
    }
    let Some((number, suffix)) = best else {
        return Err(format!("expected a number, got '{value}'"));
    };
    if suffix.is_empty() {
        return Ok(number);
    }
    let scale = match (dim, suffix) {
        (Dimension::Length, "m") => 1.0,
        (Dimension::Length, "cm") => 1e-2,
        (Dimension::Length, "mm") => 1e-3,
        (Dimension::Length, "km") => 1e3,
        (Dimension::Time, "s") => 1.0,
        (Dimension::Time, "ms") => 1e-3,
        (Dimension::Frequency, "Hz") => 1.0,
        (Dimension::Frequency, "kHz") => 1e3,
        (Dimension::Frequency, "MHz") => 1e6,
        (Dimension::Frequency, "GHz") => 1e9,
        (Dimension::Energy, "J") => 1.0,
        (Dimension::Energy, "mJ") => 1e-3,
        (Dimension::Energy, "kJ") => 1e3,
        (Dimension::Psd, "W/Hz") => 1.0,
        (Dimension::Psd, "dBm/Hz") => {
            return Ok(10f64.powf(number / 10.0) * 1e-3);
        }
        (Dimension::Gain, "dB") => {
            return Ok(10f64.powf(number / 10.0));
        }
        _ => {
            return Err(format!(
                "unit '{suffix}' does not fit this key (value '{value}')"
            ))
        }
    };
    Ok(number * scale)
}

/// Nearest known key by edit distance, for typo suggestions.
fn nearest_key(key: &str) -> Option<&'static str> {
    KEYS.iter()
        .map(|(k, _)| (*k, levenshtein(key, k)))
        .filter(|&(_, d)| d <= 3)
        .min_by_key(|&(_, d)| d)
        .map(|(k, _)| k)
}

fn levenshtein(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for (i, &ca) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, &cb) in b.iter().enumerate() {
            let sub = prev[j] + usize::from(ca != cb);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

impl RunConfig {
    /// Validate against every module's type invariants by constructing them.
    pub fn validate(&self) -> Result<(), ConfigError> {
        self.mission()
            .map_err(|e| ConfigError::Invalid(e.to_string()))?;
        self.channel()
            .map_err(|e| ConfigError::Invalid(e.to_string()))?;
        self.payload()
            .map_err(|e| ConfigError::Invalid(e.to_string()))?;
        self.mechanics()
            .map_err(|e| ConfigError::Invalid(e.to_string()))?;
        self.noise()
            .map_err(|e| ConfigError::Invalid(e.to_string()))?;
        self.map_metrics()
            .validate()
            .map_err(|e| ConfigError::Invalid(e.to_string()))?;
        if !(self.rho > 0.0 && self.rho <= 1.0) {
            return Err(ConfigError::Invalid(format!(
                "rho must lie in (0, 1], got {}",
                self.rho
            )));
        }
        if self.n_sub_intervals == 0 {
            return Err(ConfigError::Invalid(
                "n_sub_intervals must be at least 1".into(),
            ));
        }
        if !(self.power_tolerance > 0.0) {
            return Err(ConfigError::Invalid(format!(
                "power_tolerance must be positive, got {}",
                self.power_tolerance
            )));
        }
        if self.distance_grid < 2 {
            return Err(ConfigError::Invalid(
                "distance_grid needs at least 2 points".into(),
            ));
        }
        if !(self.iou_threshold > 0.0 && self.iou_threshold < 1.0) {
            return Err(ConfigError::Invalid(format!(
                "iou_threshold must lie in (0, 1), got {}",
                self.iou_threshold
            )));
        }
        if let Some(v) = self.speed {
            if !(v > 0.0) {
                return Err(ConfigError::Invalid(format!(
                    "speed must be positive, got {v}"
                )));
            }
        }
        if let Some(t) = self.t_sens {
            if !(t > 0.0) {
                return Err(ConfigError::Invalid(format!(
                    "t_sens must be positive, got {t}"
                )));
            }
        }
        Ok(())
    }

    pub fn mission(&self) -> Result<MissionConfig, slam_energy_core::geometry::GeometryError> {
        MissionConfig::new(
            self.side_length,
            self.inset,
            self.t_max,
            self.min_cycles,
            (self.t_sens_min, self.t_sens_max),
        )
    }

    pub fn channel(&self) -> Result<ChannelModel, slam_energy_core::channel::ChannelError> {
        ChannelModel::new(
            self.bandwidth,
            self.wavelength,
            self.tx_gain,
            self.rx_gain,
            self.noise_psd,
            self.rice_k,
            self.nlos_paths,
            self.seed,
        )
    }

    pub fn payload(&self) -> Result<FramePayload, slam_energy_core::channel::ChannelError> {
        FramePayload::new(self.bits_per_range, self.bits_per_odom)
    }

    pub fn mechanics(&self) -> Result<MechanicalParams, slam_energy_core::energy::EnergyError> {
        MechanicalParams::new(self.air_resistance, self.friction, self.lidar_energy)
    }

    pub fn noise(&self) -> Result<SensorNoiseModel, slam_energy_core::world::WorldError> {
        SensorNoiseModel::isotropic(self.lidar_noise_std, self.odom_noise_std, self.seed)
    }

    pub fn map_metrics(&self) -> MapMetricsConfig {
        MapMetricsConfig {
            gamma: self.gamma,
            free_space_spacing: self.free_space_spacing,
            clamp_eps: self.clamp_eps,
            chamfer_variant: self.chamfer_metric,
            extra_period_norm: self.cls_extra_period_norm,
            neighbor_includes_self: self.chamfer_include_self,
        }
    }

    /// Canonical key=value rendering of the effective configuration; the
    /// run manifest hashes this string.
    pub fn canonical(&self) -> String {
        let mut map = BTreeMap::new();
        let mut put = |k: &str, v: String| {
            map.insert(k.to_string(), v);
        };
        put("side_length", format!("{:e}", self.side_length));
        put("inset", format!("{:e}", self.inset));
        put("t_max", format!("{:e}", self.t_max));
        put("min_cycles", self.min_cycles.to_string());
        put("t_sens_min", format!("{:e}", self.t_sens_min));
        put("t_sens_max", format!("{:e}", self.t_sens_max));
        put("bandwidth", format!("{:e}", self.bandwidth));
        put("wavelength", format!("{:e}", self.wavelength));
        put("tx_gain", format!("{:e}", self.tx_gain));
        put("rx_gain", format!("{:e}", self.rx_gain));
        put("noise_psd", format!("{:e}", self.noise_psd));
        put("rice_k", format!("{:e}", self.rice_k));
        put("nlos_paths", self.nlos_paths.to_string());
        put("bits_per_range", self.bits_per_range.to_string());
        put("bits_per_odom", self.bits_per_odom.to_string());
        put("air_resistance", format!("{:e}", self.air_resistance));
        put("friction", format!("{:e}", self.friction));
        put("lidar_energy", format!("{:e}", self.lidar_energy));
        put("lidar_noise_std", format!("{:e}", self.lidar_noise_std));
        put("odom_noise_std", format!("{:e}", self.odom_noise_std));
        put("gamma", format!("{:e}", self.gamma));
        put(
            "free_space_spacing",
            format!("{:e}", self.free_space_spacing),
        );
        put("clamp_eps", format!("{:e}", self.clamp_eps));
        put("grid_resolution", format!("{:e}", self.grid_resolution));
        put("iou_threshold", format!("{:e}", self.iou_threshold));
        put(
            "chamfer_metric",
            match self.chamfer_metric {
                ChamferVariant::Euclidean => "euclidean".into(),
                ChamferVariant::SquaredEuclidean => "squared".into(),
            },
        );
        put(
            "cls_extra_period_norm",
            self.cls_extra_period_norm.to_string(),
        );
        put(
            "chamfer_include_self",
            self.chamfer_include_self.to_string(),
        );
        put(
            "pose_source",
            match self.pose_source {
                PoseSource::GroundTruth => "ground_truth".into(),
                PoseSource::DeadReckoning => "dead_reckoning".into(),
            },
        );
        put(
            "speed",
            self.speed.map_or("auto".into(), |v| format!("{v:e}")),
        );
        put(
            "t_sens",
            self.t_sens.map_or("auto".into(), |v| format!("{v:e}")),
        );
        put("rho", format!("{:e}", self.rho));
        put("seed", self.seed.to_string());
        put("n_sub_intervals", self.n_sub_intervals.to_string());
        put(
            "deterministic_channel",
            self.deterministic_channel.to_string(),
        );
        put("power_tolerance", format!("{:e}", self.power_tolerance));
        put("distance_grid", self.distance_grid.to_string());

        let mut out = String::new();
        for (k, v) in map {
            let _ = writeln!(out, "{k}={v}");
        }
        out
    }
}
