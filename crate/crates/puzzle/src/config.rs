//! Experiment configuration: a flat `key = value` text format with
//! explicit units in the key names, eager validation with line-precise
//! errors, a canonical serialization used in every report, and a SHA-256
//! digest for provenance.

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// All parameters of the simulated experiments. Every field has a flag
/// of the same name on the command line; the file, the flags and the
/// defaults merge in that order of increasing precedence.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub n_packets: usize,
    pub snr_db: f64,
    pub n_taps: usize,
    pub tap_power_decay: f64,
    pub m_values: Vec<usize>,
    pub span: f64,
    pub n_bins: usize,
    pub n_trace_samples: usize,
    pub n_subcarriers: usize,
    pub tx_power: f64,
    pub eve_distances_wavelengths: Vec<f64>,
    pub leakage_distances_wavelengths: Vec<f64>,
    pub n_bearings: usize,
    pub movement_enabled: bool,
    pub movement_period_packets: u64,
    pub movement_duty: f64,
    pub movement_blockage_db: f64,
    pub csi2bit_enabled: bool,
    pub asbg_enabled: bool,
    pub asbg_alpha: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            n_packets: 500,
            snr_db: 20.0,
            n_taps: 8,
            tap_power_decay: 0.5,
            m_values: vec![4, 7, 14, 28],
            span: 0.4,
            n_bins: 128,
            n_trace_samples: 10240,
            n_subcarriers: 72,
            tx_power: 1.0,
            eve_distances_wavelengths: vec![0.0, 0.25, 0.5, 1.0, 2.0, 3.0, 4.0],
            leakage_distances_wavelengths: vec![0.8, 1.6, 2.4, 3.2, 4.0],
            n_bearings: 6,
            movement_enabled: true,
            movement_period_packets: 10,
            movement_duty: 0.5,
            movement_blockage_db: 10.0,
            csi2bit_enabled: true,
            asbg_enabled: true,
            asbg_alpha: 0.5,
        }
    }
}

impl ExperimentConfig {
    /// Parses the flat key-value format on top of the defaults. Unknown
    /// keys and out-of-domain values are errors carrying their line;
    /// cross-field violations are attributed to the line of an involved
    /// key.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        let mut lines: Vec<(&str, usize)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let stripped = raw.trim();
            if stripped.is_empty() || stripped.starts_with('#') {
                continue;
            }
            let (key, value) = stripped.split_once('=').ok_or_else(|| Error::Config {
                line,
                message: format!("expected `key = value`, got `{stripped}`"),
            })?;
            let key = cfg.set(key.trim(), value.trim(), line)?;
            lines.push((key, line));
        }
        if let Err((key, message)) = cfg.check() {
            let line = lines
                .iter()
                .rev()
                .find(|(k, _)| *k == key)
                .map(|(_, l)| *l)
                .unwrap_or(0);
            return Err(Error::Config { line, message });
        }
        Ok(cfg)
    }

    // Assigns one key; returns the canonical key name for line tracking.
    fn set(&mut self, key: &str, value: &str, line: usize) -> Result<&'static str> {
        fn parse<T: std::str::FromStr>(key: &str, value: &str, line: usize) -> Result<T> {
            value.parse().map_err(|_| Error::Config {
                line,
                message: format!("cannot parse `{value}` as a value for `{key}`"),
            })
        }
        fn parse_list<T: std::str::FromStr>(key: &str, value: &str, line: usize) -> Result<Vec<T>> {
            value
                .split(',')
                .map(|v| parse(key, v.trim(), line))
                .collect()
        }
        let canonical = match key {
            "seed" => {
                self.seed = parse(key, value, line)?;
                "seed"
            }
            "n_packets" => {
                self.n_packets = parse(key, value, line)?;
                "n_packets"
            }
            "snr_db" => {
                self.snr_db = parse(key, value, line)?;
                "snr_db"
            }
            "n_taps" => {
                self.n_taps = parse(key, value, line)?;
                "n_taps"
            }
            "tap_power_decay" => {
                self.tap_power_decay = parse(key, value, line)?;
                "tap_power_decay"
            }
            "m_values" => {
                self.m_values = parse_list(key, value, line)?;
                "m_values"
            }
            "span" => {
                self.span = parse(key, value, line)?;
                "span"
            }
            "n_bins" => {
                self.n_bins = parse(key, value, line)?;
                "n_bins"
            }
            "n_trace_samples" => {
                self.n_trace_samples = parse(key, value, line)?;
                "n_trace_samples"
            }
            "n_subcarriers" => {
                self.n_subcarriers = parse(key, value, line)?;
                "n_subcarriers"
            }
            "tx_power" => {
                self.tx_power = parse(key, value, line)?;
                "tx_power"
            }
            "eve_distances_wavelengths" => {
                self.eve_distances_wavelengths = parse_list(key, value, line)?;
                "eve_distances_wavelengths"
            }
            "leakage_distances_wavelengths" => {
                self.leakage_distances_wavelengths = parse_list(key, value, line)?;
                "leakage_distances_wavelengths"
            }
            "n_bearings" => {
                self.n_bearings = parse(key, value, line)?;
                "n_bearings"
            }
            "movement_enabled" => {
                self.movement_enabled = parse(key, value, line)?;
                "movement_enabled"
            }
            "movement_period_packets" => {
                self.movement_period_packets = parse(key, value, line)?;
                "movement_period_packets"
            }
            "movement_duty" => {
                self.movement_duty = parse(key, value, line)?;
                "movement_duty"
            }
            "movement_blockage_db" => {
                self.movement_blockage_db = parse(key, value, line)?;
                "movement_blockage_db"
            }
            "csi2bit_enabled" => {
                self.csi2bit_enabled = parse(key, value, line)?;
                "csi2bit_enabled"
            }
            "asbg_enabled" => {
                self.asbg_enabled = parse(key, value, line)?;
                "asbg_enabled"
            }
            "asbg_alpha" => {
                self.asbg_alpha = parse(key, value, line)?;
                "asbg_alpha"
            }
            other => {
                return Err(Error::Config {
                    line,
                    message: format!("unknown key `{other}`"),
                })
            }
        };
        Ok(canonical)
    }

    /// Domain validation over the whole config.
    pub fn validate(&self) -> Result<()> {
        self.check()
            .map_err(|(_, message)| Error::Config { line: 0, message })
    }

    // Returns the offending key together with the message so parse
    // errors can point at the right line.
    fn check(&self) -> std::result::Result<(), (&'static str, String)> {
        if self.n_packets == 0 {
            return Err(("n_packets", "n_packets must be positive".into()));
        }
        if !self.snr_db.is_finite() {
            return Err(("snr_db", "snr_db must be finite".into()));
        }
        if self.n_taps == 0 || self.n_taps > crate::channel::MAX_TAPS {
            return Err((
                "n_taps",
                format!("n_taps must be in 1..={}", crate::channel::MAX_TAPS),
            ));
        }
        if !(self.tap_power_decay > 0.0 && self.tap_power_decay <= 1.0) {
            return Err(("tap_power_decay", "tap_power_decay must be in (0, 1]".into()));
        }
        if self.m_values.is_empty() {
            return Err(("m_values", "m_values must not be empty".into()));
        }
        if !(self.span > 0.0 && self.span <= 1.0) {
            return Err(("span", "span must be in (0, 1]".into()));
        }
        if self.n_bins < 8 || !self.n_bins.is_power_of_two() {
            return Err(("n_bins", "n_bins must be a power of two >= 8".into()));
        }
        if (self.span * self.n_bins as f64).ceil() < 3.0 {
            return Err(("span", "span too small for n_bins".into()));
        }
        if self.n_trace_samples < self.n_bins {
            return Err(("n_trace_samples", "n_trace_samples must be >= n_bins".into()));
        }
        if self.n_trace_samples <= self.n_taps {
            return Err(("n_trace_samples", "n_trace_samples must exceed n_taps".into()));
        }
        if self.n_subcarriers < 4 {
            return Err(("n_subcarriers", "n_subcarriers must be >= 4".into()));
        }
        for &m in &self.m_values {
            if m == 0 {
                return Err(("m_values", "m_values entries must be positive".into()));
            }
            if self.n_subcarriers < 2 * m {
                return Err((
                    "m_values",
                    format!("n_subcarriers must be >= 2*m for every m (m = {m})"),
                ));
            }
            if self.n_bins < 2 * m {
                return Err((
                    "m_values",
                    format!("n_bins must be >= 2*m for every m (m = {m})"),
                ));
            }
        }
        if !(self.tx_power > 0.0 && self.tx_power.is_finite()) {
            return Err(("tx_power", "tx_power must be positive".into()));
        }
        if self.eve_distances_wavelengths.is_empty() {
            return Err((
                "eve_distances_wavelengths",
                "distance lists must not be empty".into(),
            ));
        }
        if self
            .eve_distances_wavelengths
            .iter()
            .any(|d| !(d.is_finite() && *d >= 0.0))
        {
            return Err((
                "eve_distances_wavelengths",
                "distances must be nonnegative".into(),
            ));
        }
        if self.leakage_distances_wavelengths.is_empty() {
            return Err((
                "leakage_distances_wavelengths",
                "distance lists must not be empty".into(),
            ));
        }
        if self
            .leakage_distances_wavelengths
            .iter()
            .any(|d| !(d.is_finite() && *d >= 0.0))
        {
            return Err((
                "leakage_distances_wavelengths",
                "distances must be nonnegative".into(),
            ));
        }
        if self.n_bearings == 0 || self.n_bearings > 360 {
            return Err(("n_bearings", "n_bearings must be in 1..=360".into()));
        }
        if self.movement_period_packets < 2 {
            return Err((
                "movement_period_packets",
                "movement_period_packets must be >= 2".into(),
            ));
        }
        if !(self.movement_duty > 0.0 && self.movement_duty < 1.0) {
            return Err(("movement_duty", "movement_duty must be in (0, 1)".into()));
        }
        if !(self.movement_blockage_db > 0.0 && self.movement_blockage_db.is_finite()) {
            return Err((
                "movement_blockage_db",
                "movement_blockage_db must be positive".into(),
            ));
        }
        if !(self.asbg_alpha >= 0.0 && self.asbg_alpha.is_finite()) {
            return Err(("asbg_alpha", "asbg_alpha must be nonnegative".into()));
        }
        Ok(())
    }

    /// Canonical serialization: every key in fixed order. Parsing this
    /// text reproduces the config exactly (floats print round-trip).
    pub fn canonical_text(&self) -> String {
        fn list<T: std::fmt::Display>(values: &[T]) -> String {
            values
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
        let mut out = String::new();
        let mut push = |k: &str, v: String| {
            out.push_str(k);
            out.push_str(" = ");
            out.push_str(&v);
            out.push('\n');
        };
        push("seed", self.seed.to_string());
        push("n_packets", self.n_packets.to_string());
        push("snr_db", self.snr_db.to_string());
        push("n_taps", self.n_taps.to_string());
        push("tap_power_decay", self.tap_power_decay.to_string());
        push("m_values", list(&self.m_values));
        push("span", self.span.to_string());
        push("n_bins", self.n_bins.to_string());
        push("n_trace_samples", self.n_trace_samples.to_string());
        push("n_subcarriers", self.n_subcarriers.to_string());
        push("tx_power", self.tx_power.to_string());
        push(
            "eve_distances_wavelengths",
            list(&self.eve_distances_wavelengths),
        );
        push(
            "leakage_distances_wavelengths",
            list(&self.leakage_distances_wavelengths),
        );
        push("n_bearings", self.n_bearings.to_string());
        push("movement_enabled", self.movement_enabled.to_string());
        push(
            "movement_period_packets",
            self.movement_period_packets.to_string(),
        );
        push("movement_duty", self.movement_duty.to_string());
        push("movement_blockage_db", self.movement_blockage_db.to_string());
        push("csi2bit_enabled", self.csi2bit_enabled.to_string());
        push("asbg_enabled", self.asbg_enabled.to_string());
        push("asbg_alpha", self.asbg_alpha.to_string());
        out
    }

    /// SHA-256 of the canonical text, hex-encoded.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.canonical_text().as_bytes());
        let out = hasher.finalize();
        out.iter().map(|b| format!("{b:02x}")).collect()
    }
}
