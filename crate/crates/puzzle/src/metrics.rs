//! Evaluation metrics: empirical entropy, bit mismatch rate, Pearson
//! correlation and eavesdropper leakage, plus the per-experiment report
//! container.

use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};

/// Plug-in (empirical frequency) Shannon entropy in bits.
pub fn entropy<T: Eq + Hash>(samples: &[T]) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut counts: HashMap<&T, usize> = HashMap::new();
    for s in samples {
        *counts.entry(s).or_insert(0) += 1;
    }
    // Summation over sorted counts keeps the result bit-stable across
    // runs (hash map iteration order is randomized).
    let mut counts: Vec<usize> = counts.into_values().collect();
    counts.sort_unstable();
    let n = samples.len() as f64;
    Ok(counts
        .into_iter()
        .map(|c| {
            let p = c as f64 / n;
            -p * p.log2()
        })
        .sum())
}

/// Whether a plug-in entropy estimate over `n_samples` draws from an
/// alphabet of `alphabet_size` symbols meets the 50-samples-per-symbol
/// guideline. Small samples bias the estimate low.
pub fn entropy_sample_guideline(n_samples: usize, alphabet_size: f64) -> bool {
    n_samples as f64 >= 50.0 * alphabet_size
}

/// Fraction of positions where the two sequences disagree.
pub fn mismatch_rate<T: PartialEq>(a: &[T], b: &[T]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            a: a.len(),
            b: b.len(),
        });
    }
    if a.is_empty() {
        return Err(Error::EmptyInput);
    }
    let diff = a.iter().zip(b).filter(|(x, y)| x != y).count();
    Ok(diff as f64 / a.len() as f64)
}

/// Pearson correlation coefficient. Constant input is an explicit
/// error, never a NaN.
pub fn correlation(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            a: x.len(),
            b: y.len(),
        });
    }
    if x.len() < 2 {
        return Err(Error::InsufficientSamples {
            needed: 2,
            got: x.len(),
        });
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (a, b) in x.iter().zip(y) {
        let dx = a - mx;
        let dy = b - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::UndefinedCorrelation);
    }
    Ok(sxy / (sxx * syy).sqrt())
}

/// Leakage toward an eavesdropper with mismatch rate `p_mis`:
/// `1 - p_mis/0.5` below one half, zero at or above it.
pub fn leakage(p_mis: f64) -> Result<f64> {
    if !(p_mis.is_finite() && (0.0..=1.0).contains(&p_mis)) {
        return Err(Error::InvalidParameter(format!(
            "p_mis must be in [0, 1], got {p_mis}"
        )));
    }
    Ok(if p_mis < 0.5 { 1.0 - p_mis / 0.5 } else { 0.0 })
}

/// Secret bits per packet that survive the measured leakage.
pub fn non_leaked_bits(bits_per_packet: f64, leakage: f64) -> Result<f64> {
    if !(bits_per_packet.is_finite() && bits_per_packet >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "bits_per_packet must be nonnegative, got {bits_per_packet}"
        )));
    }
    if !(leakage.is_finite() && (0.0..=1.0).contains(&leakage)) {
        return Err(Error::InvalidParameter(format!(
            "leakage must be in [0, 1], got {leakage}"
        )));
    }
    Ok(bits_per_packet * (1.0 - leakage))
}

/// Headline metrics of one experiment run, tied to the configuration
/// that produced them. Fields an experiment does not exercise are zero;
/// the per-figure CSV rows carry the full results.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    pub entropy_bits: f64,
    pub mismatch_rate: f64,
    pub correlation: f64,
    pub leakage: f64,
    pub n_packets: usize,
    pub config_digest: String,
}

impl MetricsReport {
    pub fn new(
        entropy_bits: f64,
        mismatch_rate: f64,
        correlation: f64,
        leakage: f64,
        n_packets: usize,
        config_digest: String,
    ) -> Result<Self> {
        if !(entropy_bits.is_finite() && entropy_bits >= 0.0) {
            return Err(Error::InvalidParameter("entropy out of range".into()));
        }
        if !(0.0..=1.0).contains(&mismatch_rate) {
            return Err(Error::InvalidParameter("mismatch rate out of range".into()));
        }
        if !(-1.0..=1.0).contains(&correlation) {
            return Err(Error::InvalidParameter("correlation out of range".into()));
        }
        if !(0.0..=1.0).contains(&leakage) {
            return Err(Error::InvalidParameter("leakage out of range".into()));
        }
        if n_packets == 0 {
            return Err(Error::InvalidParameter("n_packets must be positive".into()));
        }
        Ok(Self {
            entropy_bits,
            mismatch_rate,
            correlation,
            leakage,
            n_packets,
            config_digest,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_of_uniform_four_symbols_is_two_bits() {
        let samples = [1u8, 2, 3, 4, 1, 2, 3, 4];
        assert!((entropy(&samples).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn entropy_of_constant_is_zero() {
        let samples = ["a"; 10];
        assert_eq!(entropy(&samples).unwrap(), 0.0);
    }

    #[test]
    fn entropy_of_half_quarter_quarter_is_one_point_five() {
        let samples = [0u8, 0, 1, 2];
        assert!((entropy(&samples).unwrap() - 1.5).abs() < 1e-12);
    }

    #[test]
    fn entropy_is_bounded_by_log_of_alphabet() {
        let samples = [5u8, 9, 9, 5, 7, 5];
        let h = entropy(&samples).unwrap();
        assert!(h <= (3f64).log2() + 1e-12);
        assert!(h <= (samples.len() as f64).log2());
    }

    #[test]
    fn entropy_rejects_empty_input() {
        assert!(matches!(entropy::<u8>(&[]), Err(Error::EmptyInput)));
    }

    #[test]
    fn mismatch_rate_basics() {
        assert_eq!(mismatch_rate(&[0u8, 1, 0, 1], &[0, 1, 0, 1]).unwrap(), 0.0);
        assert_eq!(mismatch_rate(&[0u8, 1, 0, 1], &[1, 0, 1, 0]).unwrap(), 1.0);
        assert_eq!(mismatch_rate(&[0u8, 1, 0, 1], &[0, 0, 0, 1]).unwrap(), 0.25);
    }

    #[test]
    fn mismatch_rate_is_symmetric() {
        let a = [0u8, 1, 1, 0, 1];
        let b = [1u8, 1, 0, 0, 1];
        assert_eq!(mismatch_rate(&a, &b).unwrap(), mismatch_rate(&b, &a).unwrap());
    }

    #[test]
    fn mismatch_rate_rejects_unequal_lengths() {
        assert!(matches!(
            mismatch_rate(&[0u8], &[0, 1]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn correlation_of_identical_and_negated() {
        let x = [1.0, 2.0, 5.0, 3.0];
        let neg: Vec<f64> = x.iter().map(|v| -v).collect();
        assert!((correlation(&x, &x).unwrap() - 1.0).abs() < 1e-12);
        assert!((correlation(&x, &neg).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn correlation_matches_hand_computed_value() {
        let x = [1.0, 2.0, 3.0, 4.0];
        let y = [1.0, 3.0, 2.0, 4.0];
        assert!((correlation(&x, &y).unwrap() - 0.8).abs() < 1e-12);
    }

    #[test]
    fn correlation_is_affine_invariant() {
        let x = [1.0, 4.0, 2.0, 8.0, 5.0];
        let y = [2.0, 3.0, 7.0, 1.0, 4.0];
        let base = correlation(&x, &y).unwrap();
        let ax: Vec<f64> = x.iter().map(|v| 3.0 * v + 11.0).collect();
        assert!((correlation(&ax, &y).unwrap() - base).abs() < 1e-12);
        let nx: Vec<f64> = x.iter().map(|v| -2.0 * v + 1.0).collect();
        assert!((correlation(&nx, &y).unwrap() + base).abs() < 1e-12);
    }

    #[test]
    fn correlation_of_constant_is_an_error() {
        assert!(matches!(
            correlation(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0]),
            Err(Error::UndefinedCorrelation)
        ));
    }

    #[test]
    fn leakage_formula() {
        assert_eq!(leakage(0.5).unwrap(), 0.0);
        assert_eq!(leakage(0.0).unwrap(), 1.0);
        assert_eq!(leakage(0.25).unwrap(), 0.5);
        assert_eq!(leakage(0.8).unwrap(), 0.0);
        assert!(leakage(1.5).is_err());
        assert!(leakage(-0.1).is_err());
    }

    #[test]
    fn leakage_is_nonincreasing_in_mismatch() {
        let mut prev = leakage(0.0).unwrap();
        for i in 1..=100 {
            let l = leakage(i as f64 / 100.0).unwrap();
            assert!(l <= prev);
            prev = l;
        }
    }

    #[test]
    fn non_leaked_bits_formula() {
        let rate = 4.0 * (3f64).log2();
        assert!((non_leaked_bits(rate, 0.0).unwrap() - 6.339850002884624).abs() < 1e-12);
        assert_eq!(non_leaked_bits(rate, 1.0).unwrap(), 0.0);
        assert!((non_leaked_bits(1.0, 0.4).unwrap() - 0.6).abs() < 1e-12);
    }

    #[test]
    fn report_validates_ranges() {
        assert!(MetricsReport::new(1.0, 0.2, 0.5, 0.1, 10, "d".into()).is_ok());
        assert!(MetricsReport::new(-1.0, 0.2, 0.5, 0.1, 10, "d".into()).is_err());
        assert!(MetricsReport::new(1.0, 1.2, 0.5, 0.1, 10, "d".into()).is_err());
        assert!(MetricsReport::new(1.0, 0.2, 1.5, 0.1, 10, "d".into()).is_err());
        assert!(MetricsReport::new(1.0, 0.2, 0.5, 2.0, 10, "d".into()).is_err());
        assert!(MetricsReport::new(1.0, 0.2, 0.5, 0.1, 0, "d".into()).is_err());
    }

    #[test]
    fn sample_guideline_threshold() {
        assert!(entropy_sample_guideline(4050, 81.0));
        assert!(!entropy_sample_guideline(500, 81.0));
    }
}
