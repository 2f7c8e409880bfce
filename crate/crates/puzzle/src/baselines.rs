//! Baseline extractors the shape-based method is compared against:
//! per-subcarrier 2-bit quantization of the channel frequency response,
//! and RSS thresholding with public index exchange.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::codec::BitString;
use crate::error::{Error, Result};
use crate::seeds::{self, stream};

/// Per-subcarrier channel frequency response estimates.
#[derive(Debug, Clone, PartialEq)]
pub struct FreqResponse {
    responses: Vec<Complex64>,
}

impl FreqResponse {
    pub fn new(responses: Vec<Complex64>) -> Result<Self> {
        if responses.len() < 4 {
            return Err(Error::InsufficientSamples {
                needed: 4,
                got: responses.len(),
            });
        }
        if !responses
            .iter()
            .all(|r| r.re.is_finite() && r.im.is_finite())
        {
            return Err(Error::InvalidParameter(
                "frequency responses must be finite".into(),
            ));
        }
        Ok(Self { responses })
    }

    pub fn responses(&self) -> &[Complex64] {
        &self.responses
    }

    pub fn n_subcarriers(&self) -> usize {
        self.responses.len()
    }
}

/// One RSS measurement per probe packet, in dB.
#[derive(Debug, Clone, PartialEq)]
pub struct RssSequence {
    values: Vec<f64>,
}

impl RssSequence {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InsufficientSamples {
                needed: 2,
                got: values.len(),
            });
        }
        if !values.iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidParameter("RSS values must be finite".into()));
        }
        Ok(Self { values })
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
}

/// Output of the RSS extractor: kept bits plus the publicly exchanged
/// probe indices they came from.
#[derive(Debug, Clone, PartialEq)]
pub struct AsbgResult {
    bits: BitString,
    kept_indices: Vec<usize>,
}

impl AsbgResult {
    pub fn bits(&self) -> &BitString {
        &self.bits
    }

    pub fn kept_indices(&self) -> &[usize] {
        &self.kept_indices
    }

    /// True when every probe fell inside the dropped band.
    pub fn is_empty_key(&self) -> bool {
        self.bits.is_empty()
    }
}

/// Quantizes evenly selected subcarrier magnitudes into 2 Gray-coded
/// bits each, thresholded at the 25/50/75% quantiles of the selected
/// magnitudes. Output length is exactly `2 * n_selected`.
pub fn csi2bit_encode(fr: &FreqResponse, n_selected: usize) -> Result<BitString> {
    let n_sub = fr.n_subcarriers();
    if n_selected == 0 || n_selected > n_sub {
        return Err(Error::InvalidParameter(format!(
            "n_selected must be in 1..={n_sub}, got {n_selected}"
        )));
    }
    let mags: Vec<f64> = (0..n_selected)
        .map(|i| {
            let idx = ((i as f64) * (n_sub as f64) / (n_selected as f64)).round() as usize;
            fr.responses()[idx.min(n_sub - 1)].norm()
        })
        .collect();
    let q25 = quantile(&mags, 0.25);
    let q50 = quantile(&mags, 0.50);
    let q75 = quantile(&mags, 0.75);
    let mut bits = Vec::with_capacity(2 * n_selected);
    for &v in &mags {
        // Gray-coded bins from lowest to highest: 00, 01, 11, 10.
        let pair: [u8; 2] = if v <= q25 {
            [0, 0]
        } else if v <= q50 {
            [0, 1]
        } else if v <= q75 {
            [1, 1]
        } else {
            [1, 0]
        };
        bits.extend_from_slice(&pair);
    }
    BitString::new(bits)
}

// Linear-interpolation quantile (the common "type 7" definition).
fn quantile(values: &[f64], p: f64) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let pos = p * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    sorted[lo] + (sorted[hi] - sorted[lo]) * frac
}

/// RSS thresholding: keeps probes above `mean + alpha*stdev` as bit 1
/// and below `mean - alpha*stdev` as bit 0, drops the rest, and records
/// the kept probe indices. Population standard deviation over the whole
/// sequence. A zero-variance sequence with positive alpha keeps nothing
/// and yields an empty (flagged) key.
pub fn asbg_extract(rss: &RssSequence, alpha: f64) -> Result<AsbgResult> {
    if !(alpha.is_finite() && alpha >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "alpha must be nonnegative, got {alpha}"
        )));
    }
    let values = rss.values();
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    let sd = var.sqrt();
    let upper = mean + alpha * sd;
    let lower = mean - alpha * sd;
    let mut bits = Vec::new();
    let mut kept = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        if v > upper {
            bits.push(1);
            kept.push(i);
        } else if v < lower {
            bits.push(0);
            kept.push(i);
        }
    }
    Ok(AsbgResult {
        bits: BitString::new(bits)?,
        kept_indices: kept,
    })
}

/// Eve's attack on the RSS extractor: she knows Bob's kept indices. For
/// each one she answers with her own quantization when her value clears
/// her own thresholds, otherwise with a seeded fair coin flip. Output is
/// aligned to Bob's bits.
pub fn eve_guess_asbg(
    bob: &AsbgResult,
    eve_rss: &RssSequence,
    alpha: f64,
    seed: u64,
) -> Result<BitString> {
    if let Some(&bad) = bob
        .kept_indices()
        .iter()
        .find(|&&i| i >= eve_rss.len())
    {
        return Err(Error::LengthMismatch {
            a: bad + 1,
            b: eve_rss.len(),
        });
    }
    let values = eve_rss.values();
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    let sd = var.sqrt();
    let upper = mean + alpha * sd;
    let lower = mean - alpha * sd;
    let mut rng = ChaCha12Rng::seed_from_u64(seeds::mix(seed, stream::GUESS_COIN));
    let bits = bob
        .kept_indices()
        .iter()
        .map(|&i| {
            let v = values[i];
            if v > upper {
                1
            } else if v < lower {
                0
            } else if rng.gen_bool(0.5) {
                1
            } else {
                0
            }
        })
        .collect();
    BitString::new(bits)
}
