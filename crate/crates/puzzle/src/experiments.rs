//! Seeded experiment runners behind the CLI: the mismatch/entropy
//! comparison against 2-bit subcarrier quantization, the code
//! correlation versus eavesdropper distance study, and the leakage
//! comparison against RSS thresholding under a planned-movement
//! attacker.
//!
//! Runners are pure functions of the configuration; identical configs
//! produce identical results (and therefore byte-identical reports).

use crate::baselines::{asbg_extract, csi2bit_encode, eve_guess_asbg, RssSequence};
use crate::channel::{
    draw_channel, eve_channel, generate_qpsk, movement_attack, observe, EvePlacement,
    MovementPattern, NoiseSpec,
};
use crate::codec::{code_to_bits, encode_curve, extract_key, BitString, CodeWord};
use crate::config::ExperimentConfig;
use crate::dsp::lowess_smooth;
use crate::error::{Error, Result};
use crate::metrics::{
    correlation, entropy, entropy_sample_guideline, leakage, mismatch_rate, non_leaked_bits,
    MetricsReport,
};
use crate::seeds;
use crate::sim::{estimate_freq_response, freq_response_db_curve, rss_db};

// Party salts for seed derivation within one coherence interval.
const ALICE: u64 = 11;
const BOB: u64 = 12;
const EVE: u64 = 13;
const AB_BLOCKER: u64 = 14;
const EVE_BLOCKER: u64 = 15;
const GUESS: u64 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Puzzle,
    Csi2Bit,
    Asbg,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Puzzle => "puzzle",
            Method::Csi2Bit => "csi2bit",
            Method::Asbg => "asbg",
        }
    }
}

/// One (bit rate, method) cell of the mismatch/entropy comparison.
#[derive(Debug, Clone)]
pub struct MismatchEntropyRow {
    pub bits_per_packet: usize,
    pub method: Method,
    pub mean_bit_mismatch: f64,
    pub joint_entropy_bits: f64,
    pub summed_symbol_entropy_bits: f64,
    pub entropy_sample_ok: bool,
}

#[derive(Debug, Clone)]
pub struct MismatchEntropyResult {
    pub rows: Vec<MismatchEntropyRow>,
    pub summary: MetricsReport,
    pub config: ExperimentConfig,
}

/// Compares the shape code against 2-bit subcarrier quantization on the
/// same noisy frequency-response estimates, across the configured
/// segment counts (bit rate = 2m bits per packet for both methods).
pub fn run_mismatch_entropy(cfg: &ExperimentConfig) -> Result<MismatchEntropyResult> {
    cfg.validate()?;
    let n_sub = cfg.n_subcarriers;
    let est_var = 10f64.powf(-cfg.snr_db / 10.0);
    let n_m = cfg.m_values.len();

    let mut puz_a: Vec<Vec<CodeWord>> = vec![Vec::with_capacity(cfg.n_packets); n_m];
    let mut puz_b: Vec<Vec<CodeWord>> = vec![Vec::with_capacity(cfg.n_packets); n_m];
    let mut csi_a: Vec<Vec<BitString>> = vec![Vec::with_capacity(cfg.n_packets); n_m];
    let mut csi_b: Vec<Vec<BitString>> = vec![Vec::with_capacity(cfg.n_packets); n_m];

    for t in 0..cfg.n_packets {
        let base = seeds::mix(cfg.seed, t as u64);
        let ch = draw_channel(base, cfg.n_taps, cfg.tap_power_decay)?;
        let fr_a = estimate_freq_response(&ch, n_sub, est_var, seeds::mix(base, ALICE))?;
        let fr_b = estimate_freq_response(&ch, n_sub, est_var, seeds::mix(base, BOB))?;
        let curve_a = lowess_smooth(&freq_response_db_curve(&fr_a)?, cfg.span)?;
        let curve_b = lowess_smooth(&freq_response_db_curve(&fr_b)?, cfg.span)?;
        for (mi, &m) in cfg.m_values.iter().enumerate() {
            puz_a[mi].push(encode_curve(&curve_a, m)?);
            puz_b[mi].push(encode_curve(&curve_b, m)?);
            if cfg.csi2bit_enabled {
                csi_a[mi].push(csi2bit_encode(&fr_a, m)?);
                csi_b[mi].push(csi2bit_encode(&fr_b, m)?);
            }
        }
    }

    let mut rows = Vec::new();
    for (mi, &m) in cfg.m_values.iter().enumerate() {
        let rate = 2 * m;

        let bits_a: Vec<u8> = puz_a[mi]
            .iter()
            .flat_map(|c| code_to_bits(c).bits().to_vec())
            .collect();
        let bits_b: Vec<u8> = puz_b[mi]
            .iter()
            .flat_map(|c| code_to_bits(c).bits().to_vec())
            .collect();
        rows.push(MismatchEntropyRow {
            bits_per_packet: rate,
            method: Method::Puzzle,
            mean_bit_mismatch: mismatch_rate(&bits_a, &bits_b)?,
            joint_entropy_bits: entropy(&puz_a[mi])?,
            summed_symbol_entropy_bits: summed_position_entropy_codes(&puz_a[mi], m)?,
            entropy_sample_ok: entropy_sample_guideline(cfg.n_packets, 3f64.powi(m as i32)),
        });

        if cfg.csi2bit_enabled {
            let ba: Vec<u8> = csi_a[mi].iter().flat_map(|b| b.bits().to_vec()).collect();
            let bb: Vec<u8> = csi_b[mi].iter().flat_map(|b| b.bits().to_vec()).collect();
            rows.push(MismatchEntropyRow {
                bits_per_packet: rate,
                method: Method::Csi2Bit,
                mean_bit_mismatch: mismatch_rate(&ba, &bb)?,
                joint_entropy_bits: entropy(&csi_a[mi])?,
                summed_symbol_entropy_bits: summed_position_entropy_bits(&csi_a[mi], rate)?,
                entropy_sample_ok: entropy_sample_guideline(cfg.n_packets, 4f64.powi(m as i32)),
            });
        }
    }

    // Headline: the first configured rate.
    let sym_a = symbol_stream(&puz_a[0]);
    let sym_b = symbol_stream(&puz_b[0]);
    let corr = correlation(&to_f64(&sym_a), &to_f64(&sym_b))?;
    let summary = MetricsReport::new(
        rows[0].joint_entropy_bits,
        rows[0].mean_bit_mismatch,
        corr,
        0.0, // no adversary in this experiment
        cfg.n_packets,
        cfg.digest(),
    )?;
    Ok(MismatchEntropyResult {
        rows,
        summary,
        config: cfg.clone(),
    })
}

/// One (distance, bearing) cell of the correlation study.
#[derive(Debug, Clone)]
pub struct CorrelationRow {
    pub distance_wavelengths: f64,
    pub bearing_deg: f64,
    pub correlation: f64,
}

#[derive(Debug, Clone)]
pub struct CorrelationResult {
    pub rows: Vec<CorrelationRow>,
    /// Mean correlation per distance, bearings averaged, in the order of
    /// the configured distance list.
    pub mean_by_distance: Vec<(f64, f64)>,
    pub summary: MetricsReport,
    pub config: ExperimentConfig,
}

/// Correlation of the codes extracted by two receivers of the same
/// transmission, versus their separation. Both receivers run the full
/// trace pipeline (QPSK probe, channel, PSD, smoothing, coding).
pub fn run_correlation(cfg: &ExperimentConfig) -> Result<CorrelationResult> {
    cfg.validate()?;
    let m = cfg.m_values[0];
    let noise = NoiseSpec::new(cfg.tx_power * 10f64.powf(-cfg.snr_db / 10.0))?;
    let bearings: Vec<f64> = (0..cfg.n_bearings)
        .map(|b| 360.0 * b as f64 / cfg.n_bearings as f64)
        .collect();
    let n_d = cfg.eve_distances_wavelengths.len();

    let mut bob_codes: Vec<CodeWord> = Vec::with_capacity(cfg.n_packets);
    let mut eve_codes: Vec<Vec<Vec<CodeWord>>> =
        vec![vec![Vec::with_capacity(cfg.n_packets); bearings.len()]; n_d];

    for t in 0..cfg.n_packets {
        let base = seeds::mix(cfg.seed, t as u64);
        let ch = draw_channel(base, cfg.n_taps, cfg.tap_power_decay)?;
        let tx = generate_qpsk(base, cfg.n_trace_samples, cfg.tx_power)?;
        let rx_bob = observe(&tx, &ch, &noise, seeds::mix(base, BOB))?;
        bob_codes.push(extract_key(&rx_bob, m, cfg.span, cfg.n_bins)?);
        for (di, &d) in cfg.eve_distances_wavelengths.iter().enumerate() {
            for (bi, &bearing) in bearings.iter().enumerate() {
                let placement = EvePlacement::new(d, bearing)?;
                let ch_e = eve_channel(&ch, &placement, seeds::mix(base, EVE));
                let rx_e = observe(&tx, &ch_e, &noise, seeds::mix(seeds::mix(base, EVE), bi as u64))?;
                eve_codes[di][bi].push(extract_key(&rx_e, m, cfg.span, cfg.n_bins)?);
            }
        }
    }

    let bob_stream = to_f64(&symbol_stream(&bob_codes));
    let mut rows = Vec::new();
    let mut mean_by_distance = Vec::new();
    for (di, &d) in cfg.eve_distances_wavelengths.iter().enumerate() {
        let mut acc = 0.0;
        for (bi, &bearing) in bearings.iter().enumerate() {
            let eve_stream = to_f64(&symbol_stream(&eve_codes[di][bi]));
            let rho = correlation(&bob_stream, &eve_stream)?;
            acc += rho;
            rows.push(CorrelationRow {
                distance_wavelengths: d,
                bearing_deg: bearing,
                correlation: rho,
            });
        }
        mean_by_distance.push((d, acc / bearings.len() as f64));
    }

    let joint_entropy = entropy(&bob_codes)?;
    let last = n_d - 1;
    let far_mismatch = pooled_symbol_mismatch(&bob_codes, &eve_codes[last][0])?;
    let summary = MetricsReport::new(
        joint_entropy,
        far_mismatch,
        mean_by_distance[0].1.clamp(-1.0, 1.0),
        leakage(far_mismatch.min(1.0))?,
        cfg.n_packets,
        cfg.digest(),
    )?;
    Ok(CorrelationResult {
        rows,
        mean_by_distance,
        summary,
        config: cfg.clone(),
    })
}

/// One (distance, method) cell of the leakage comparison.
#[derive(Debug, Clone)]
pub struct LeakageRow {
    pub distance_wavelengths: f64,
    pub method: Method,
    pub eve_mismatch: f64,
    pub leakage: f64,
    pub bits_per_packet: f64,
    pub non_leaked_bits_per_packet: f64,
}

#[derive(Debug, Clone)]
pub struct LeakageResult {
    pub rows: Vec<LeakageRow>,
    pub summary: MetricsReport,
    pub config: ExperimentConfig,
}

/// Leakage toward an eavesdropper who schedules a blocking object on
/// the path (when movement is enabled) and overhears nearby: the shape
/// code versus RSS thresholding with index exchange.
pub fn run_leakage(cfg: &ExperimentConfig) -> Result<LeakageResult> {
    cfg.validate()?;
    let m = cfg.m_values[0];
    let noise = NoiseSpec::new(cfg.tx_power * 10f64.powf(-cfg.snr_db / 10.0))?;
    let pattern = MovementPattern::new(
        cfg.movement_period_packets,
        cfg.movement_duty,
        cfg.movement_blockage_db,
    )?;
    let n_d = cfg.leakage_distances_wavelengths.len();

    let mut bob_codes: Vec<CodeWord> = Vec::with_capacity(cfg.n_packets);
    let mut bob_rss: Vec<f64> = Vec::with_capacity(cfg.n_packets);
    let mut eve_codes: Vec<Vec<CodeWord>> = vec![Vec::with_capacity(cfg.n_packets); n_d];
    let mut eve_rss: Vec<Vec<f64>> = vec![Vec::with_capacity(cfg.n_packets); n_d];

    for t in 0..cfg.n_packets {
        let base = seeds::mix(cfg.seed, t as u64);
        let ch0 = draw_channel(base, cfg.n_taps, cfg.tap_power_decay)?;
        let ch_ab = if cfg.movement_enabled {
            movement_attack(&ch0, &pattern, t as u64, seeds::mix(cfg.seed, AB_BLOCKER))
        } else {
            ch0.clone()
        };
        let tx = generate_qpsk(base, cfg.n_trace_samples, cfg.tx_power)?;
        let rx_bob = observe(&tx, &ch_ab, &noise, seeds::mix(base, BOB))?;
        bob_rss.push(rss_db(&rx_bob));
        bob_codes.push(extract_key(&rx_bob, m, cfg.span, cfg.n_bins)?);

        for (di, &d) in cfg.leakage_distances_wavelengths.iter().enumerate() {
            let placement = EvePlacement::new(d, 0.0)?;
            let ch_e0 = eve_channel(&ch0, &placement, seeds::mix(base, EVE));
            let ch_e = if cfg.movement_enabled {
                movement_attack(&ch_e0, &pattern, t as u64, seeds::mix(cfg.seed, EVE_BLOCKER))
            } else {
                ch_e0
            };
            let rx_e = observe(&tx, &ch_e, &noise, seeds::mix(seeds::mix(base, EVE), di as u64))?;
            eve_rss[di].push(rss_db(&rx_e));
            eve_codes[di].push(extract_key(&rx_e, m, cfg.span, cfg.n_bins)?);
        }
    }

    let mut rows = Vec::new();
    let puzzle_rate = m as f64 * 3f64.log2();
    for (di, &d) in cfg.leakage_distances_wavelengths.iter().enumerate() {
        // Shape code: leakage from the symbol mismatch between the
        // receivers (the ternary symbols are the key material).
        let p_sym = pooled_symbol_mismatch(&bob_codes, &eve_codes[di])?;
        let leak = leakage(p_sym)?;
        rows.push(LeakageRow {
            distance_wavelengths: d,
            method: Method::Puzzle,
            eve_mismatch: p_sym,
            leakage: leak,
            bits_per_packet: puzzle_rate,
            non_leaked_bits_per_packet: non_leaked_bits(puzzle_rate, leak)?,
        });
    }

    if cfg.asbg_enabled {
        let bob_asbg = asbg_extract(&RssSequence::new(bob_rss.clone())?, cfg.asbg_alpha)?;
        for (di, &d) in cfg.leakage_distances_wavelengths.iter().enumerate() {
            let (p_mis, leak, rate) = if bob_asbg.is_empty_key() {
                (0.5, 0.0, 0.0)
            } else {
                let guess = eve_guess_asbg(
                    &bob_asbg,
                    &RssSequence::new(eve_rss[di].clone())?,
                    cfg.asbg_alpha,
                    seeds::mix(seeds::mix(cfg.seed, GUESS), di as u64),
                )?;
                let p = mismatch_rate(bob_asbg.bits().bits(), guess.bits())?;
                let rate = bob_asbg.bits().len() as f64 / cfg.n_packets as f64;
                (p, leakage(p)?, rate)
            };
            rows.push(LeakageRow {
                distance_wavelengths: d,
                method: Method::Asbg,
                eve_mismatch: p_mis,
                leakage: leak,
                bits_per_packet: rate,
                non_leaked_bits_per_packet: non_leaked_bits(rate, leak)?,
            });
        }
    }

    let puzzle_rows: Vec<&LeakageRow> = rows
        .iter()
        .filter(|r| r.method == Method::Puzzle)
        .collect();
    let mean_puzzle_leak =
        puzzle_rows.iter().map(|r| r.leakage).sum::<f64>() / puzzle_rows.len() as f64;
    let mean_puzzle_mis =
        puzzle_rows.iter().map(|r| r.eve_mismatch).sum::<f64>() / puzzle_rows.len() as f64;
    let eve_near = to_f64(&symbol_stream(&eve_codes[0]));
    let bob_stream = to_f64(&symbol_stream(&bob_codes));
    let near_corr = correlation(&bob_stream, &eve_near)?;
    let summary = MetricsReport::new(
        entropy(&bob_codes)?,
        mean_puzzle_mis.min(1.0),
        near_corr.clamp(-1.0, 1.0),
        mean_puzzle_leak,
        cfg.n_packets,
        cfg.digest(),
    )?;
    Ok(LeakageResult {
        rows,
        summary,
        config: cfg.clone(),
    })
}

// Concatenated symbols of a code stream, packet order preserved.
fn symbol_stream(codes: &[CodeWord]) -> Vec<u8> {
    codes.iter().flat_map(|c| c.symbols().to_vec()).collect()
}

fn to_f64(symbols: &[u8]) -> Vec<f64> {
    symbols.iter().map(|&s| s as f64).collect()
}

fn pooled_symbol_mismatch(a: &[CodeWord], b: &[CodeWord]) -> Result<f64> {
    let sa = symbol_stream(a);
    let sb = symbol_stream(b);
    mismatch_rate(&sa, &sb)
}

// Sum over symbol positions of the per-position empirical entropy.
fn summed_position_entropy_codes(codes: &[CodeWord], m: usize) -> Result<f64> {
    if codes.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut total = 0.0;
    for pos in 0..m {
        let col: Vec<u8> = codes.iter().map(|c| c.symbols()[pos]).collect();
        total += entropy(&col)?;
    }
    Ok(total)
}

fn summed_position_entropy_bits(words: &[BitString], n_bits: usize) -> Result<f64> {
    if words.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut total = 0.0;
    for pos in 0..n_bits {
        let col: Vec<u8> = words.iter().map(|w| w.bits()[pos]).collect();
        total += entropy(&col)?;
    }
    Ok(total)
}
