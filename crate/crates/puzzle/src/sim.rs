//! Shared helpers for the simulated experiments: noisy per-subcarrier
//! channel estimates, magnitude curves, and packet RSS.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use crate::baselines::FreqResponse;
use crate::channel::ChannelRealization;
use crate::dsp::{Curve, IqTrace};
use crate::error::Result;
use crate::seeds::{self, stream};

/// A receiver's noisy estimate of the per-subcarrier frequency response:
/// the true response plus i.i.d. complex Gaussian estimation error of
/// the given variance per subcarrier.
pub fn estimate_freq_response(
    ch: &ChannelRealization,
    n_subcarriers: usize,
    error_variance: f64,
    seed: u64,
) -> Result<FreqResponse> {
    let mut h = ch.frequency_response(n_subcarriers);
    if error_variance > 0.0 {
        let s = (error_variance / 2.0).sqrt();
        let mut rng = ChaCha12Rng::seed_from_u64(seeds::mix(seed, stream::ESTIMATE_NOISE));
        for v in h.iter_mut() {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            *v += Complex64::new(s * re, s * im);
        }
    }
    FreqResponse::new(h)
}

/// Magnitude curve of a frequency response in dB (squared magnitudes
/// through the standard dB conversion), abscissa in subcarrier index
/// units. This is the curve the codec consumes on the subcarrier path.
pub fn freq_response_db_curve(fr: &FreqResponse) -> Result<Curve> {
    let power: Vec<f64> = fr.responses().iter().map(|h| h.norm_sqr()).collect();
    Curve::new(power, 1.0)?.to_db()
}

/// Received signal strength of a packet in dB: mean sample power.
pub fn rss_db(trace: &IqTrace) -> f64 {
    10.0 * trace.mean_power().log10()
}
