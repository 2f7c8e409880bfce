//! IQ trace files.
//!
//! Binary format (little-endian), 16-byte header then payload:
//!
//! ```text
//! bytes 0..4    magic "PZL1"
//! bytes 4..8    format version, u32 (currently 1)
//! bytes 8..16   sample count, u64
//! bytes 16..    interleaved I,Q pairs as IEEE-754 f32
//! ```
//!
//! The sampling rate is not stored; readers supply it (it scales only
//! the frequency axis, never the extracted code). A two-column CSV
//! (`i,q` per line, optional header) is also accepted for hand-made
//! fixtures; [`read_trace`] sniffs the magic to pick the parser.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use num_complex::Complex64;

use crate::dsp::IqTrace;
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 4] = b"PZL1";
pub const VERSION: u32 = 1;

const HEADER_LEN: u64 = 16;

/// Writes a trace in the binary format.
pub fn write_trace(path: &Path, trace: &IqTrace) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&(trace.len() as u64).to_le_bytes())?;
    for s in trace.samples() {
        w.write_all(&(s.re as f32).to_le_bytes())?;
        w.write_all(&(s.im as f32).to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a trace, accepting either the binary format (by magic) or CSV.
pub fn read_trace(path: &Path, sample_rate_hz: f64) -> Result<IqTrace> {
    let mut file = File::open(path)?;
    let mut probe = [0u8; 4];
    let got = read_up_to(&mut file, &mut probe)?;
    if got == 4 && &probe == MAGIC {
        read_binary_body(&mut file, sample_rate_hz)
    } else {
        drop(file);
        read_trace_csv(path, sample_rate_hz)
    }
}

fn read_up_to(r: &mut impl Read, buf: &mut [u8]) -> Result<usize> {
    let mut filled = 0;
    while filled < buf.len() {
        let n = r.read(&mut buf[filled..])?;
        if n == 0 {
            break;
        }
        filled += n;
    }
    Ok(filled)
}

// Parses everything after the 4 magic bytes.
fn read_binary_body(r: &mut impl Read, sample_rate_hz: f64) -> Result<IqTrace> {
    let mut word = [0u8; 4];
    if read_up_to(r, &mut word)? != 4 {
        return Err(Error::MalformedTrace {
            offset: 4,
            what: "truncated version field".into(),
        });
    }
    let version = u32::from_le_bytes(word);
    if version != VERSION {
        return Err(Error::MalformedTrace {
            offset: 4,
            what: format!("unsupported version {version}, expected {VERSION}"),
        });
    }
    let mut count_bytes = [0u8; 8];
    if read_up_to(r, &mut count_bytes)? != 8 {
        return Err(Error::MalformedTrace {
            offset: 8,
            what: "truncated sample-count field".into(),
        });
    }
    let count = u64::from_le_bytes(count_bytes);
    if count < 2 {
        return Err(Error::MalformedTrace {
            offset: 8,
            what: format!("sample count {count} below the two-sample minimum"),
        });
    }
    let mut samples = Vec::with_capacity(count as usize);
    let mut pair = [0u8; 8];
    for i in 0..count {
        let offset = HEADER_LEN + 8 * i;
        let got = read_up_to(r, &mut pair)?;
        if got != 8 {
            return Err(Error::MalformedTrace {
                offset: offset + got as u64,
                what: format!("payload ends inside sample {i} of {count}"),
            });
        }
        let re = f32::from_le_bytes(pair[0..4].try_into().unwrap()) as f64;
        let im = f32::from_le_bytes(pair[4..8].try_into().unwrap()) as f64;
        if !(re.is_finite() && im.is_finite()) {
            return Err(Error::MalformedTrace {
                offset,
                what: format!("non-finite sample {i}"),
            });
        }
        samples.push(Complex64::new(re, im));
    }
    // Trailing bytes after the declared payload are a format violation.
    let mut extra = [0u8; 1];
    if read_up_to(r, &mut extra)? != 0 {
        return Err(Error::MalformedTrace {
            offset: HEADER_LEN + 8 * count,
            what: "trailing bytes after declared samples".into(),
        });
    }
    IqTrace::new(samples, sample_rate_hz)
}

/// Reads a two-column CSV trace (I,Q per line; optional header line).
pub fn read_trace_csv(path: &Path, sample_rate_hz: f64) -> Result<IqTrace> {
    let reader = BufReader::new(File::open(path)?);
    let mut samples = Vec::new();
    let mut byte_offset: u64 = 0;
    for (line_no, line) in reader.lines().enumerate() {
        let line = line?;
        let line_start = byte_offset;
        byte_offset += line.len() as u64 + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut cols = trimmed.split(',');
        let (a, b) = (cols.next().unwrap_or(""), cols.next().unwrap_or(""));
        if cols.next().is_some() {
            return Err(Error::MalformedTrace {
                offset: line_start,
                what: format!("line {}: expected two columns", line_no + 1),
            });
        }
        match (a.trim().parse::<f64>(), b.trim().parse::<f64>()) {
            (Ok(re), Ok(im)) => {
                if !(re.is_finite() && im.is_finite()) {
                    return Err(Error::MalformedTrace {
                        offset: line_start,
                        what: format!("line {}: non-finite sample", line_no + 1),
                    });
                }
                samples.push(Complex64::new(re, im));
            }
            _ if line_no == 0 => continue, // header row
            _ => {
                return Err(Error::MalformedTrace {
                    offset: line_start,
                    what: format!("line {}: cannot parse `{trimmed}`", line_no + 1),
                });
            }
        }
    }
    IqTrace::new(samples, sample_rate_hz)
}
