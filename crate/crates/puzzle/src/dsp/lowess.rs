//! Lowess smoothing: per-point local linear regression with tricube
//! weights over a fractional span of nearest neighbours.
//!
//! One regression pass, no robustness iterations. The window for output
//! point `i` holds the `ceil(span * n)` points nearest to `i` by
//! abscissa, ties resolved toward the lower index.

use super::Curve;
use crate::error::{Error, Result};

pub fn lowess_smooth(curve: &Curve, span: f64) -> Result<Curve> {
    if !(span.is_finite() && span > 0.0 && span <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "span must be in (0, 1], got {span}"
        )));
    }
    let n = curve.len();
    let window = (span * n as f64).ceil() as usize;
    if window < 3 {
        return Err(Error::SpanTooSmall { window, len: n });
    }

    let values = curve.values();
    let step = curve.x_step();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let (lo, hi) = neighbor_window(i, n, window);
        out.push(fit_at(values, step, i, lo, hi));
    }
    Curve::new(out, step)
}

// Grows a contiguous window of `window` points around `i`, preferring the
// lower index when left and right candidates are equidistant.
fn neighbor_window(i: usize, n: usize, window: usize) -> (usize, usize) {
    let mut lo = i;
    let mut hi = i;
    while hi - lo + 1 < window {
        let left = if lo > 0 { i - (lo - 1) } else { usize::MAX };
        let right = if hi + 1 < n { (hi + 1) - i } else { usize::MAX };
        if left <= right {
            lo -= 1;
        } else {
            hi += 1;
        }
    }
    (lo, hi)
}

// Weighted linear fit over [lo, hi], evaluated at point i. Abscissas are
// centered on x_i so the fitted intercept is the smoothed value.
fn fit_at(values: &[f64], step: f64, i: usize, lo: usize, hi: usize) -> f64 {
    let d_max = step * (i - lo).max(hi - i) as f64;
    let mut sw = 0.0;
    let mut swx = 0.0;
    let mut swy = 0.0;
    let mut swxx = 0.0;
    let mut swxy = 0.0;
    for j in lo..=hi {
        let u = (j as f64 - i as f64) * step;
        let w = tricube(u.abs() / d_max);
        sw += w;
        swx += w * u;
        swy += w * values[j];
        swxx += w * u * u;
        swxy += w * u * values[j];
    }
    let denom = sw * swxx - swx * swx;
    if denom.abs() < f64::EPSILON * sw * sw * d_max * d_max {
        // All weight collapsed onto one abscissa; fall back to the mean.
        return swy / sw;
    }
    let slope = (sw * swxy - swx * swy) / denom;
    let intercept = (swy - slope * swx) / sw;
    intercept
}

fn tricube(t: f64) -> f64 {
    if t >= 1.0 {
        0.0
    } else {
        let c = 1.0 - t * t * t;
        c * c * c
    }
}
