//! Shape-based secret key extraction from wireless channel observations.
//!
//! Two radios that exchange packets inside one channel coherence interval
//! see the same channel. This crate turns that shared randomness into
//! matching secret codes by comparing the *shape* of each receiver's
//! power spectrum rather than its absolute level: estimate the PSD,
//! smooth it, split the curve into segments, and classify every segment
//! as ascending, descending or steady by discrete Fréchet distance.
//!
//! The crate also ships a seeded desk-scale simulator of the reciprocal
//! channel (including an eavesdropper and a planned-movement attacker),
//! two baseline extractors for comparison, the evaluation metrics, and
//! the experiment runners behind the `puzzle` command-line tool.
//!
//! See the `guide` module for a chapter-by-chapter walkthrough; the same
//! text lives in `book/` and every code block in it compiles and runs as
//! a doc-test.

pub mod baselines;
pub mod channel;
pub mod codec;
pub mod config;
pub mod dsp;
mod error;
pub mod experiments;
pub mod guide;
pub mod metrics;
pub mod report;
pub mod seeds;
pub mod sim;
pub mod trace_io;

pub use error::{Error, Result};
