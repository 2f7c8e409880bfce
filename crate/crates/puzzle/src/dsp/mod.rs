//! Numerical kernels shared by the extraction pipeline: power spectral
//! density estimation, Lowess smoothing and the discrete Fréchet distance.

mod frechet;
mod lowess;
mod psd;

pub use frechet::frechet_distance;
pub use lowess::lowess_smooth;
pub use psd::{estimate_psd, estimate_psd_with, PsdConfig, PsdMode};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A received packet: complex baseband samples at a fixed sampling rate.
#[derive(Debug, Clone, PartialEq)]
pub struct IqTrace {
    samples: Vec<Complex64>,
    sample_rate_hz: f64,
}

impl IqTrace {
    /// Builds a trace, rejecting short or non-finite input.
    pub fn new(samples: Vec<Complex64>, sample_rate_hz: f64) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InsufficientSamples {
                needed: 2,
                got: samples.len(),
            });
        }
        if !samples.iter().all(|s| s.re.is_finite() && s.im.is_finite()) {
            return Err(Error::InvalidTrace("non-finite sample"));
        }
        if !(sample_rate_hz.is_finite() && sample_rate_hz > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "sample_rate_hz must be positive, got {sample_rate_hz}"
            )));
        }
        Ok(Self {
            samples,
            sample_rate_hz,
        })
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        false // length >= 2 by construction
    }

    pub fn sample_rate_hz(&self) -> f64 {
        self.sample_rate_hz
    }

    /// Mean power of the trace: sum of |x|^2 over the length.
    pub fn mean_power(&self) -> f64 {
        self.samples.iter().map(|s| s.norm_sqr()).sum::<f64>() / self.samples.len() as f64
    }
}

/// An ordered real-valued polyline over an evenly spaced abscissa:
/// a PSD estimate or a magnitude response, in linear or dB units.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    values: Vec<f64>,
    x_step: f64,
}

impl Curve {
    pub fn new(values: Vec<f64>, x_step: f64) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InsufficientSamples {
                needed: 2,
                got: values.len(),
            });
        }
        if !values.iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidParameter(
                "curve values must be finite".into(),
            ));
        }
        if !(x_step.is_finite() && x_step > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "x_step must be positive, got {x_step}"
            )));
        }
        Ok(Self { values, x_step })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn x_step(&self) -> f64 {
        self.x_step
    }

    /// Converts power values to dB (10 log10), flooring each bin at
    /// 1e-12 of the curve maximum so exact zeros stay finite.
    pub fn to_db(&self) -> Result<Self> {
        let peak = self.values.iter().cloned().fold(f64::MIN, f64::max);
        if peak <= 0.0 {
            return Err(Error::InvalidParameter(
                "cannot convert non-positive curve to dB".into(),
            ));
        }
        let floor = peak * 1e-12;
        let values = self
            .values
            .iter()
            .map(|&v| 10.0 * v.max(floor).log10())
            .collect();
        Curve::new(values, self.x_step)
    }
}

/// A planar polyline: the operand of the discrete Fréchet distance.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline2 {
    points: Vec<(f64, f64)>,
}

impl Polyline2 {
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyCurve);
        }
        if !points.iter().all(|p| p.0.is_finite() && p.1.is_finite()) {
            return Err(Error::InvalidParameter(
                "polyline coordinates must be finite".into(),
            ));
        }
        Ok(Self { points })
    }

    /// Embeds a 1-D sample sequence as a polyline with x = 0, 1, ..., k-1.
    pub fn from_values(values: &[f64]) -> Result<Self> {
        Self::new(
            values
                .iter()
                .enumerate()
                .map(|(i, &v)| (i as f64, v))
                .collect(),
        )
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}
