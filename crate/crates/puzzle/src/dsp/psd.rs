//! Power spectral density estimation for complex baseband traces.
//!
//! The default estimator is a Welch-averaged periodogram: Hann-windowed
//! segments of `n_bins` samples with 50% overlap. Averaging keeps the
//! per-bin variance low enough that the flat spectrum of random data is
//! visible on a single packet. A raw single-segment periodogram is
//! available through [`PsdConfig`] for sensitivity studies.
//!
//! Whatever the mode, the returned curve is rescaled so that
//! `sum(bins) * x_step` equals the trace's mean power exactly. The
//! extraction pipeline only consumes the shape, so pinning total power
//! to the trace keeps Parseval bookkeeping exact without affecting codes.

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::{Curve, IqTrace};
use crate::error::{Error, Result};

/// Estimator variant. Bin count and ordering are identical in both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PsdMode {
    /// Hann-windowed segments of `n_bins`, 50% overlap, averaged.
    #[default]
    WelchAveraged,
    /// One rectangular-window segment (the first `n_bins` samples).
    SinglePeriodogram,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PsdConfig {
    pub mode: PsdMode,
}

/// Estimates the PSD with the default Welch-averaged configuration.
///
/// The output has exactly `n_bins` values ordered from -fs/2 to +fs/2
/// (baseband order) with `x_step = sample_rate / n_bins`, in linear
/// power-density units.
pub fn estimate_psd(trace: &IqTrace, n_bins: usize) -> Result<Curve> {
    estimate_psd_with(trace, n_bins, &PsdConfig::default())
}

pub fn estimate_psd_with(trace: &IqTrace, n_bins: usize, config: &PsdConfig) -> Result<Curve> {
    if n_bins < 8 || !n_bins.is_power_of_two() {
        return Err(Error::InvalidParameter(format!(
            "n_bins must be a power of two >= 8, got {n_bins}"
        )));
    }
    if trace.len() < n_bins {
        return Err(Error::InsufficientSamples {
            needed: n_bins,
            got: trace.len(),
        });
    }
    let mean_power = trace.mean_power();
    if mean_power <= 0.0 {
        return Err(Error::InvalidTrace("zero power"));
    }

    let samples = trace.samples();
    let mut planner = FftPlanner::<f64>::new();
    let fft = planner.plan_fft_forward(n_bins);

    let window: Vec<f64> = match config.mode {
        PsdMode::WelchAveraged => hann(n_bins),
        PsdMode::SinglePeriodogram => vec![1.0; n_bins],
    };
    let hop = match config.mode {
        PsdMode::WelchAveraged => n_bins / 2,
        PsdMode::SinglePeriodogram => trace.len(), // exactly one segment
    };

    let mut accum = vec![0.0f64; n_bins];
    let mut buf = vec![Complex64::new(0.0, 0.0); n_bins];
    let mut n_segments = 0usize;
    let mut start = 0usize;
    while start + n_bins <= samples.len() {
        for (dst, (s, w)) in buf
            .iter_mut()
            .zip(samples[start..start + n_bins].iter().zip(window.iter()))
        {
            *dst = s * w;
        }
        fft.process(&mut buf);
        for (a, b) in accum.iter_mut().zip(buf.iter()) {
            *a += b.norm_sqr();
        }
        n_segments += 1;
        start += hop;
        if config.mode == PsdMode::SinglePeriodogram {
            break;
        }
    }
    debug_assert!(n_segments >= 1);

    // Reorder to baseband (-fs/2 .. fs/2) and pin total power to the trace.
    let half = n_bins / 2;
    let mut values: Vec<f64> = (0..n_bins).map(|i| accum[(i + half) % n_bins]).collect();
    let total: f64 = values.iter().sum();
    if total <= 0.0 {
        return Err(Error::InvalidTrace("zero power in analyzed segments"));
    }
    let x_step = trace.sample_rate_hz() / n_bins as f64;
    let scale = mean_power / (total * x_step);
    for v in values.iter_mut() {
        *v *= scale;
    }
    Curve::new(values, x_step)
}

// Periodic Hann window.
fn hann(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| 0.5 - 0.5 * (2.0 * std::f64::consts::PI * i as f64 / n as f64).cos())
        .collect()
}
