//! The user guide, chapter by chapter. Each module's documentation is
//! one chapter of the rendered book under `book/`; including the
//! markdown here makes every code block in the book compile and run
//! under `cargo test --doc`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/channel-simulation.md")]
pub mod channel_simulation {}

#[doc = include_str!("../../../book/src/spectral-shape.md")]
pub mod spectral_shape {}

#[doc = include_str!("../../../book/src/curve-coding.md")]
pub mod curve_coding {}

#[doc = include_str!("../../../book/src/baselines.md")]
pub mod baselines {}

#[doc = include_str!("../../../book/src/metrics.md")]
pub mod metrics {}

#[doc = include_str!("../../../book/src/experiments.md")]
pub mod experiments {}
