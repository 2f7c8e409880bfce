//! CSV report emission: one file per figure-style result plus a summary,
//! each carrying the effective configuration and its digest in a leading
//! comment block. Output is byte-identical for identical config + seed.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::experiments::{CorrelationResult, LeakageResult, MismatchEntropyResult};
use crate::metrics::MetricsReport;

fn comment_block(experiment: &str, cfg: &ExperimentConfig) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# puzzle experiment report: {experiment}");
    let _ = writeln!(out, "# config_digest: {}", cfg.digest());
    let _ = writeln!(out, "# config:");
    for line in cfg.canonical_text().lines() {
        let _ = writeln!(out, "#   {line}");
    }
    out
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    fs::write(path, contents)?;
    Ok(())
}

fn summary_csv(experiment: &str, cfg: &ExperimentConfig, s: &MetricsReport) -> String {
    let mut out = comment_block(experiment, cfg);
    out.push_str(
        "experiment,entropy_bits,mismatch_rate,correlation,leakage,n_packets,config_digest\n",
    );
    let _ = writeln!(
        out,
        "{},{},{},{},{},{},{}",
        experiment,
        s.entropy_bits,
        s.mismatch_rate,
        s.correlation,
        s.leakage,
        s.n_packets,
        s.config_digest
    );
    out
}

/// Writes `mismatch_vs_rate.csv`, `entropy_vs_rate.csv`, `summary.csv`
/// and the effective config; returns the paths written.
pub fn write_mismatch_entropy(out_dir: &Path, r: &MismatchEntropyResult) -> Result<Vec<PathBuf>> {
    let name = "mismatch_entropy";
    let mut mismatch = comment_block(name, &r.config);
    mismatch.push_str("bits_per_packet,method,mean_bit_mismatch_rate\n");
    for row in &r.rows {
        let _ = writeln!(
            mismatch,
            "{},{},{}",
            row.bits_per_packet,
            row.method.as_str(),
            row.mean_bit_mismatch
        );
    }

    let mut entropy = comment_block(name, &r.config);
    entropy.push_str(
        "bits_per_packet,method,joint_entropy_bits,summed_symbol_entropy_bits,entropy_sample_ok\n",
    );
    for row in &r.rows {
        let _ = writeln!(
            entropy,
            "{},{},{},{},{}",
            row.bits_per_packet,
            row.method.as_str(),
            row.joint_entropy_bits,
            row.summed_symbol_entropy_bits,
            row.entropy_sample_ok
        );
    }

    let paths = vec![
        out_dir.join("mismatch_vs_rate.csv"),
        out_dir.join("entropy_vs_rate.csv"),
        out_dir.join("summary.csv"),
        out_dir.join("effective_config.cfg"),
    ];
    write_file(&paths[0], &mismatch)?;
    write_file(&paths[1], &entropy)?;
    write_file(&paths[2], &summary_csv(name, &r.config, &r.summary))?;
    write_file(&paths[3], &r.config.canonical_text())?;
    Ok(paths)
}

/// Writes `correlation_vs_distance.csv` (per bearing, plus per-distance
/// means), `summary.csv` and the effective config.
pub fn write_correlation(out_dir: &Path, r: &CorrelationResult) -> Result<Vec<PathBuf>> {
    let name = "correlation";
    let mut corr = comment_block(name, &r.config);
    corr.push_str("distance_wavelengths,bearing_deg,correlation\n");
    for row in &r.rows {
        let _ = writeln!(
            corr,
            "{},{},{}",
            row.distance_wavelengths, row.bearing_deg, row.correlation
        );
    }

    let mut means = comment_block(name, &r.config);
    means.push_str("distance_wavelengths,mean_correlation\n");
    for (d, rho) in &r.mean_by_distance {
        let _ = writeln!(means, "{d},{rho}");
    }

    let paths = vec![
        out_dir.join("correlation_vs_distance.csv"),
        out_dir.join("correlation_vs_distance_mean.csv"),
        out_dir.join("summary.csv"),
        out_dir.join("effective_config.cfg"),
    ];
    write_file(&paths[0], &corr)?;
    write_file(&paths[1], &means)?;
    write_file(&paths[2], &summary_csv(name, &r.config, &r.summary))?;
    write_file(&paths[3], &r.config.canonical_text())?;
    Ok(paths)
}

/// Writes `leakage_vs_distance.csv`, `summary.csv` and the effective
/// config.
pub fn write_leakage(out_dir: &Path, r: &LeakageResult) -> Result<Vec<PathBuf>> {
    let name = "leakage";
    let mut leak = comment_block(name, &r.config);
    leak.push_str(
        "distance_wavelengths,method,eve_mismatch_rate,leakage,bits_per_packet,non_leaked_bits_per_packet\n",
    );
    for row in &r.rows {
        let _ = writeln!(
            leak,
            "{},{},{},{},{},{}",
            row.distance_wavelengths,
            row.method.as_str(),
            row.eve_mismatch,
            row.leakage,
            row.bits_per_packet,
            row.non_leaked_bits_per_packet
        );
    }

    let paths = vec![
        out_dir.join("leakage_vs_distance.csv"),
        out_dir.join("summary.csv"),
        out_dir.join("effective_config.cfg"),
    ];
    write_file(&paths[0], &leak)?;
    write_file(&paths[1], &summary_csv(name, &r.config, &r.summary))?;
    write_file(&paths[2], &r.config.canonical_text())?;
    Ok(paths)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::run_mismatch_entropy;

    #[test]
    fn reports_are_byte_identical_across_runs() {
        let mut cfg = ExperimentConfig::default();
        cfg.n_packets = 20;
        cfg.m_values = vec![4];
        cfg.n_trace_samples = 1024;
        let dir = tempfile::tempdir().unwrap();
        let d1 = dir.path().join("run1");
        let d2 = dir.path().join("run2");
        let r1 = run_mismatch_entropy(&cfg).unwrap();
        let r2 = run_mismatch_entropy(&cfg).unwrap();
        let p1 = write_mismatch_entropy(&d1, &r1).unwrap();
        let p2 = write_mismatch_entropy(&d2, &r2).unwrap();
        for (a, b) in p1.iter().zip(&p2) {
            assert_eq!(
                std::fs::read(a).unwrap(),
                std::fs::read(b).unwrap(),
                "{a:?} differs"
            );
        }
    }

    #[test]
    fn comment_block_echoes_the_config() {
        let cfg = ExperimentConfig::default();
        let block = comment_block("test", &cfg);
        assert!(block.contains("# config_digest:"));
        assert!(block.contains("#   seed = 1"));
        assert!(block.contains("#   span = 0.4"));
    }
}
