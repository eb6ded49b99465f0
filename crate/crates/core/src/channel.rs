//! Wireless link model: Rician fading, Friis path loss, Shannon rate and
//! the per-period transmitted-data integral.
//!
//! The channel magnitude is held constant within a period and redrawn per
//! period from a Rice distribution normalized so `E[|h|^2] = 1`; a
//! deterministic mode pins `|h|^2 = 1` (the line-of-sight value). The data
//! amount transmitted in a period's communication window is a right-endpoint
//! Riemann sum of the rate over the window, the same discretization used by
//! the implicit power relationship it feeds.

use crate::geometry::{distance_to_ap_clamped, GeometryError, MissionConfig, SchedulePlan};
use crate::rng::{stream, Domain};
use rand::Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ChannelError {
    #[error("invalid channel model: {0}")]
    InvalidModel(String),
    #[error("distance must be positive, got {0}")]
    NonPositiveDistance(f64),
    #[error("transmit power must be positive, got {0}")]
    NonPositivePower(f64),
    #[error("quadrature needs at least 1 sub-interval")]
    NoSubIntervals,
    #[error("channel realization has {len} periods, period {k} requested")]
    RealizationTooShort { k: u32, len: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Static link-budget parameters.
///
/// Gains are linear (not dB); `noise_psd` is in W/Hz so the noise power is
/// `noise_psd * bandwidth`. `rice_k` is the linear Rician K-factor and
/// `nlos_paths` the nominal number of scattered paths behind it.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelModel {
    pub bandwidth: f64,
    pub wavelength: f64,
    pub tx_gain: f64,
    pub rx_gain: f64,
    pub noise_psd: f64,
    pub rice_k: f64,
    pub nlos_paths: u32,
    pub seed: u64,
}

impl ChannelModel {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        bandwidth: f64,
        wavelength: f64,
        tx_gain: f64,
        rx_gain: f64,
        noise_psd: f64,
        rice_k: f64,
        nlos_paths: u32,
        seed: u64,
    ) -> Result<Self, ChannelError> {
        let model = Self {
            bandwidth,
            wavelength,
            tx_gain,
            rx_gain,
            noise_psd,
            rice_k,
            nlos_paths,
            seed,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn validate(&self) -> Result<(), ChannelError> {
        for (name, v) in [
            ("bandwidth", self.bandwidth),
            ("wavelength", self.wavelength),
            ("tx_gain", self.tx_gain),
            ("rx_gain", self.rx_gain),
            ("noise_psd", self.noise_psd),
            ("rice_k", self.rice_k),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(ChannelError::InvalidModel(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// Noise power over the band: sigma^2 = noise_psd * bandwidth, in W.
    pub fn noise_power(&self) -> f64 {
        self.noise_psd * self.bandwidth
    }
}

/// Squared channel magnitudes, one per period `k = 1..=len`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    h_mag_sq: Vec<f64>,
}

impl ChannelRealization {
    /// Line-of-sight-only realization: `|h_k|^2 = 1` for every period.
    pub fn deterministic(periods: usize) -> Self {
        Self {
            h_mag_sq: vec![1.0; periods],
        }
    }

    /// Rician draws for periods `1..=periods`, keyed by `(model.seed, k)`.
    pub fn sample(model: &ChannelModel, periods: usize) -> Self {
        Self {
            h_mag_sq: (1..=periods as u32)
                .map(|k| sample_channel(model, k))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.h_mag_sq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h_mag_sq.is_empty()
    }

    /// `|h_k|^2` for 1-based period `k`.
    pub fn h_mag_sq(&self, k: u32) -> Result<f64, ChannelError> {
        self.h_mag_sq
            .get(k as usize - 1)
            .copied()
            .ok_or(ChannelError::RealizationTooShort {
                k,
                len: self.h_mag_sq.len(),
            })
    }
}

/// Bits used to encode one frame: `a1` per LiDAR range, `a2` per odometry
/// element, 360 ranges and 6 odometry elements per period.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FramePayload {
    pub bits_per_range: u32,
    pub bits_per_odom: u32,
}

impl FramePayload {
    pub fn new(bits_per_range: u32, bits_per_odom: u32) -> Result<Self, ChannelError> {
        if bits_per_range == 0 || bits_per_odom == 0 {
            return Err(ChannelError::InvalidModel(
                "payload bit widths must be positive".to_string(),
            ));
        }
        Ok(Self {
            bits_per_range,
            bits_per_odom,
        })
    }

    /// Complete per-period data amount: 360*a1 + 6*a2 bits.
    pub fn payload_bits(&self) -> f64 {
        360.0 * self.bits_per_range as f64 + 6.0 * self.bits_per_odom as f64
    }
}

/// One Rician draw of `|h_k|^2`, normalized so `E[|h|^2] = 1`.
///
/// The LoS component carries `K/(K+1)` of the power and the scattered
/// component `1/(K+1)`; deterministic per `(model.seed, k)`.
pub fn sample_channel(model: &ChannelModel, k: u32) -> f64 {
    let mut rng = stream(model.seed, Domain::Channel, &[k as u64]);
    let los = (model.rice_k / (model.rice_k + 1.0)).sqrt();
    let scatter_sigma = (0.5 / (model.rice_k + 1.0)).sqrt();
    let re: f64 = rng.sample::<f64, _>(StandardNormal) * scatter_sigma + los;
    let im: f64 = rng.sample::<f64, _>(StandardNormal) * scatter_sigma;
    re * re + im * im
}

/// Free-space received power: p_tx * G_t * G_r * lambda^2 / (4 pi d)^2, in W.
pub fn received_power(p_tx: f64, distance: f64, model: &ChannelModel) -> Result<f64, ChannelError> {
    if !(p_tx > 0.0) {
        return Err(ChannelError::NonPositivePower(p_tx));
    }
    if !(distance > 0.0) {
        return Err(ChannelError::NonPositiveDistance(distance));
    }
    let spreading = 4.0 * std::f64::consts::PI * distance;
    Ok(
        p_tx * model.tx_gain * model.rx_gain * model.wavelength * model.wavelength
            / (spreading * spreading),
    )
}

/// Instantaneous rate B * log2(1 + p_rx |h|^2 / sigma^2), in bit/s.
pub fn instantaneous_rate(
    p_tx: f64,
    distance: f64,
    h_mag_sq: f64,
    model: &ChannelModel,
) -> Result<f64, ChannelError> {
    let p_rx = received_power(p_tx, distance, model)?;
    let snr = p_rx * h_mag_sq / model.noise_power();
    Ok(model.bandwidth * log2_1p(snr))
}

/// Aggregated link gain mu = G_t G_r lambda^2 |h|^2 / (sigma^2 (4 pi)^2),
/// chosen so that SNR = p_tx * mu / d^2.
pub fn link_mu(model: &ChannelModel, h_mag_sq: f64) -> f64 {
    let four_pi = 4.0 * std::f64::consts::PI;
    model.tx_gain * model.rx_gain * model.wavelength * model.wavelength * h_mag_sq
        / (model.noise_power() * four_pi * four_pi)
}

/// log2(1 + x) without cancellation for small x.
pub fn log2_1p(x: f64) -> f64 {
    x.ln_1p() / std::f64::consts::LN_2
}

/// Right-endpoint Riemann sum of the rate over `window`, for an arbitrary
/// distance profile. `n_sub` equal sub-intervals; evaluation at each
/// sub-interval's right endpoint.
pub fn transmitted_bits_over(
    distance: impl Fn(f64) -> f64,
    window: (f64, f64),
    p_tx: f64,
    mu: f64,
    bandwidth: f64,
    n_sub: u32,
) -> f64 {
    let (start, end) = window;
    let dt = (end - start) / n_sub as f64;
    let mut bits = 0.0;
    for i in 1..=n_sub {
        let d = distance(start + dt * i as f64);
        bits += bandwidth * log2_1p(p_tx * mu / (d * d)) * dt;
    }
    bits
}

/// Data amount transmitted in the k-th period's communication window, in
/// bits, for `k` in `2..=periods+1`.
#[allow(clippy::too_many_arguments)]
pub fn transmitted_bits(
    k: u32,
    p_tx: f64,
    plan: &SchedulePlan,
    config: &MissionConfig,
    model: &ChannelModel,
    realization: &ChannelRealization,
    n_sub: u32,
) -> Result<f64, ChannelError> {
    if n_sub == 0 {
        return Err(ChannelError::NoSubIntervals);
    }
    if !(p_tx > 0.0) {
        return Err(ChannelError::NonPositivePower(p_tx));
    }
    let window = plan.comm_window(k)?;
    let mu = link_mu(model, realization.h_mag_sq(k)?);
    Ok(transmitted_bits_over(
        |t| distance_to_ap_clamped(t, config, plan.speed),
        window,
        p_tx,
        mu,
        model.bandwidth,
        n_sub,
    ))
}
