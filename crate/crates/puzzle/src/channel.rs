//! Seeded simulation of a TDD reciprocal channel: tapped-delay-line
//! realizations, QPSK probe traffic, receiver observations, spatially
//! correlated eavesdropper channels and a planned-movement attacker.
//!
//! Both legitimate parties share one [`ChannelRealization`] per coherence
//! interval; reciprocity is the same object used in both directions. All
//! randomness flows from explicit seeds (see [`crate::seeds`]).

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use crate::dsp::IqTrace;
use crate::error::{Error, Result};
use crate::seeds::{self, stream};

pub const MAX_TAPS: usize = 64;

/// Tapped-delay-line impulse response for one coherence interval.
/// Taps are unit-spaced at the sampling rate.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    taps: Vec<Complex64>,
    coherence_id: u64,
}

impl ChannelRealization {
    pub fn new(taps: Vec<Complex64>, coherence_id: u64) -> Result<Self> {
        if taps.is_empty() || taps.len() > MAX_TAPS {
            return Err(Error::InvalidParameter(format!(
                "tap count must be in 1..={MAX_TAPS}, got {}",
                taps.len()
            )));
        }
        if !taps.iter().any(|t| t.norm_sqr() > 0.0) {
            return Err(Error::InvalidParameter("all taps are zero".into()));
        }
        Ok(Self { taps, coherence_id })
    }

    pub fn taps(&self) -> &[Complex64] {
        &self.taps
    }

    pub fn coherence_id(&self) -> u64 {
        self.coherence_id
    }

    /// Sum of squared tap magnitudes.
    pub fn total_power(&self) -> f64 {
        self.taps.iter().map(|t| t.norm_sqr()).sum()
    }

    /// Frequency response sampled at `n_points` evenly spaced frequencies
    /// across the band, ordered from -fs/2 to +fs/2.
    pub fn frequency_response(&self, n_points: usize) -> Vec<Complex64> {
        let n = n_points as f64;
        (0..n_points)
            .map(|i| {
                let f = (i as f64 - n / 2.0) / n;
                self.taps
                    .iter()
                    .enumerate()
                    .map(|(l, h)| {
                        h * Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * f * l as f64)
                    })
                    .sum()
            })
            .collect()
    }
}

/// Additive white Gaussian noise level, as variance per complex sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    variance: f64,
}

impl NoiseSpec {
    pub fn new(variance: f64) -> Result<Self> {
        if !(variance.is_finite() && variance >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "noise variance must be nonnegative, got {variance}"
            )));
        }
        Ok(Self { variance })
    }

    /// Variance giving the requested SNR against unit signal power.
    pub fn from_snr_db(snr_db: f64) -> Result<Self> {
        Self::new(10f64.powf(-snr_db / 10.0))
    }

    pub fn variance(&self) -> f64 {
        self.variance
    }
}

/// Eavesdropper position relative to the reference receiver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvePlacement {
    distance_wavelengths: f64,
    bearing_deg: f64,
}

impl EvePlacement {
    pub fn new(distance_wavelengths: f64, bearing_deg: f64) -> Result<Self> {
        if !(distance_wavelengths.is_finite() && distance_wavelengths >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "distance must be nonnegative, got {distance_wavelengths}"
            )));
        }
        if !(bearing_deg.is_finite() && (0.0..360.0).contains(&bearing_deg)) {
            return Err(Error::InvalidParameter(format!(
                "bearing must be in [0, 360), got {bearing_deg}"
            )));
        }
        Ok(Self {
            distance_wavelengths,
            bearing_deg,
        })
    }

    pub fn distance_wavelengths(&self) -> f64 {
        self.distance_wavelengths
    }

    pub fn bearing_deg(&self) -> f64 {
        self.bearing_deg
    }
}

/// Periodic blocking schedule of the planned-movement attacker.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MovementPattern {
    period_packets: u64,
    duty: f64,
    blockage_db: f64,
}

impl MovementPattern {
    pub fn new(period_packets: u64, duty: f64, blockage_db: f64) -> Result<Self> {
        if period_packets < 2 {
            return Err(Error::InvalidParameter(format!(
                "period must be >= 2 packets, got {period_packets}"
            )));
        }
        if !(duty.is_finite() && duty > 0.0 && duty < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "duty must be in (0, 1), got {duty}"
            )));
        }
        if !(blockage_db.is_finite() && blockage_db > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "blockage must be positive dB, got {blockage_db}"
            )));
        }
        Ok(Self {
            period_packets,
            duty,
            blockage_db,
        })
    }

    pub fn period_packets(&self) -> u64 {
        self.period_packets
    }

    pub fn duty(&self) -> f64 {
        self.duty
    }

    pub fn blockage_db(&self) -> f64 {
        self.blockage_db
    }

    /// Whether the path is blocked during the given packet.
    pub fn is_blocked(&self, packet_index: u64) -> bool {
        let pos = (packet_index % self.period_packets) as f64;
        pos < self.duty * self.period_packets as f64
    }
}

/// Draws a Rayleigh tapped-delay-line realization: i.i.d. circular
/// complex Gaussian taps with exponentially decaying variance
/// `power_decay^l`, normalized to unit total expected power.
pub fn draw_channel(seed: u64, n_taps: usize, power_decay: f64) -> Result<ChannelRealization> {
    if n_taps == 0 || n_taps > MAX_TAPS {
        return Err(Error::InvalidParameter(format!(
            "n_taps must be in 1..={MAX_TAPS}, got {n_taps}"
        )));
    }
    if !(power_decay.is_finite() && power_decay > 0.0 && power_decay <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "power_decay must be in (0, 1], got {power_decay}"
        )));
    }
    let raw: Vec<f64> = (0..n_taps).map(|l| power_decay.powi(l as i32)).collect();
    let total: f64 = raw.iter().sum();
    let mut rng = ChaCha12Rng::seed_from_u64(seeds::mix(seed, stream::CHANNEL_TAPS));
    let taps = raw
        .iter()
        .map(|p| {
            let s = (p / total / 2.0).sqrt();
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(s * re, s * im)
        })
        .collect();
    ChannelRealization::new(taps, seed)
}

/// Generates `n` i.i.d. uniform QPSK samples with mean power exactly
/// `power` (the constellation is constant-modulus).
pub fn generate_qpsk(seed: u64, n: usize, power: f64) -> Result<IqTrace> {
    if n < 2 {
        return Err(Error::InsufficientSamples { needed: 2, got: n });
    }
    if !(power.is_finite() && power > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "power must be positive, got {power}"
        )));
    }
    let a = (power / 2.0).sqrt();
    let mut rng = ChaCha12Rng::seed_from_u64(seeds::mix(seed, stream::QPSK_DATA));
    let samples = (0..n)
        .map(|_| {
            let bits: u8 = rng.gen_range(0..4);
            let re = if bits & 1 == 0 { a } else { -a };
            let im = if bits & 2 == 0 { a } else { -a };
            Complex64::new(re, im)
        })
        .collect();
    IqTrace::new(samples, 1.0)
}

/// Passes a transmission through the channel and adds receiver noise.
///
/// The output is the linear convolution with the leading `taps-1`
/// transient samples dropped, so it has the same length as the input.
pub fn observe(
    tx: &IqTrace,
    ch: &ChannelRealization,
    noise: &NoiseSpec,
    seed: u64,
) -> Result<IqTrace> {
    let x = tx.samples();
    let h = ch.taps();
    let n = x.len();
    let taps = h.len();
    if n <= taps {
        return Err(Error::InsufficientSamples {
            needed: taps + 1,
            got: n,
        });
    }
    let mut y = Vec::with_capacity(n);
    for j in 0..n {
        let mut acc = Complex64::new(0.0, 0.0);
        for (l, hl) in h.iter().enumerate() {
            let idx = taps - 1 + j - l;
            if idx < n {
                acc += hl * x[idx];
            }
        }
        y.push(acc);
    }
    if noise.variance() > 0.0 {
        let s = (noise.variance() / 2.0).sqrt();
        let mut rng = ChaCha12Rng::seed_from_u64(seeds::mix(seed, stream::OBSERVE_NOISE));
        for v in y.iter_mut() {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            *v += Complex64::new(s * re, s * im);
        }
    }
    IqTrace::new(y, tx.sample_rate_hz())
}

/// Spatial correlation coefficient between channels observed a given
/// distance apart: the isotropic-scattering Bessel model J0(2*pi*d),
/// clamped to [0, 1].
pub fn spatial_correlation(distance_wavelengths: f64) -> f64 {
    bessel_j0(2.0 * std::f64::consts::PI * distance_wavelengths).clamp(0.0, 1.0)
}

/// Derives the eavesdropper's channel from the reference channel: each
/// tap is `rho * tap + sqrt(1 - rho^2) * independent same-power draw`,
/// with `rho` from [`spatial_correlation`]. Distance zero returns the
/// reference channel unchanged. The bearing selects the seed of the
/// independent component; the isotropic model has no other bearing
/// dependence.
pub fn eve_channel(
    ch: &ChannelRealization,
    placement: &EvePlacement,
    seed: u64,
) -> ChannelRealization {
    if placement.distance_wavelengths() == 0.0 {
        return ch.clone();
    }
    let rho = spatial_correlation(placement.distance_wavelengths());
    let ortho = (1.0 - rho * rho).sqrt();
    let mut rng = ChaCha12Rng::seed_from_u64(seeds::mix(
        seeds::mix(seed, stream::EVE_COMPONENT),
        placement.bearing_deg().to_bits(),
    ));
    let taps = ch
        .taps()
        .iter()
        .map(|b| {
            let theta = rng.gen_range(0.0..std::f64::consts::TAU);
            let indep = Complex64::from_polar(b.norm(), theta);
            rho * b + ortho * indep
        })
        .collect();
    ChannelRealization::new(taps, ch.coherence_id()).expect("same tap count as input")
}

/// Applies the planned-movement attacker to one packet's channel.
///
/// Blocked packets have every tap attenuated by the configured blockage
/// and re-rotated by a seeded random phase of up to +/-45 degrees: the
/// attacker can predict the amplitude drop but not the re-shaping of the
/// frequency response. Unblocked packets pass through unchanged.
pub fn movement_attack(
    ch: &ChannelRealization,
    pattern: &MovementPattern,
    packet_index: u64,
    seed: u64,
) -> ChannelRealization {
    if !pattern.is_blocked(packet_index) {
        return ch.clone();
    }
    let gain = 10f64.powf(-pattern.blockage_db() / 20.0);
    let mut rng = ChaCha12Rng::seed_from_u64(seeds::derive(
        seed,
        stream::MOVEMENT_ROTATION,
        packet_index,
    ));
    let quarter = std::f64::consts::FRAC_PI_4;
    let taps = ch
        .taps()
        .iter()
        .map(|t| {
            let theta = rng.gen_range(-quarter..quarter);
            t * Complex64::from_polar(gain, theta)
        })
        .collect();
    ChannelRealization::new(taps, ch.coherence_id()).expect("same tap count as input")
}

/// J0 Bessel function by the classic Abramowitz & Stegun rational
/// approximations (9.4.1 for |x| <= 3, 9.4.3 beyond); absolute error
/// below 2e-7 everywhere, ample for a correlation coefficient.
fn bessel_j0(x: f64) -> f64 {
    let ax = x.abs();
    if ax <= 3.0 {
        let t = (ax / 3.0) * (ax / 3.0);
        1.0 + t
            * (-2.249_999_7
                + t * (1.265_620_8
                    + t * (-0.316_386_6
                        + t * (0.044_447_9 + t * (-0.003_944_4 + t * 0.000_210_0)))))
    } else {
        let t = 3.0 / ax;
        let f0 = 0.797_884_56
            + t * (-0.000_000_77
                + t * (-0.005_527_4
                    + t * (-0.000_095_12
                        + t * (0.001_372_37 + t * (-0.000_728_05 + t * 0.000_144_76)))));
        let theta0 = ax - 0.785_398_16
            + t * (-0.041_663_97
                + t * (-0.000_039_54
                    + t * (0.002_625_73
                        + t * (-0.000_541_25 + t * (-0.000_293_33 + t * 0.000_135_58)))));
        f0 * theta0.cos() / ax.sqrt()
    }
}
