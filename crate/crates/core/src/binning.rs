//! Bin boundaries over a series.
//!
//! Without an x-axis the series is split into bins of (almost) equal element
//! count: `offsets[k] = floor(k * len / n_bins)`, in exact integer math.
//!
//! With an x-axis the bins have equal width in x. Each sample is treated as
//! covering one mean sample step `(x[len-1] - x[0]) / (len - 1)`, so the
//! axis spans `len` steps ending at `x[len-1]`, and bin `k` starts after
//! the edge
//!
//! ```text
//! e_k = x[0] + (x[len-1] - x[0]) * (k * len - n_bins) / (n_bins * (len - 1))
//! ```
//!
//! i.e. `offsets[k]` is the first index with `x[i] > e_k`. For an equally
//! sampled axis this reproduces the equal-count offsets exactly, so passing
//! such an x selects the same points as passing none. The last bin always
//! ends at `len`. A zero-width axis puts every point in the last bin. Edges
//! are computed in `f64`; integer or datetime axes spanning more than 2^53
//! ticks can shift an edge by one sample.

use std::ops::Range;

use rayon::prelude::*;

use crate::dtype::{with_series, Element, IndexSeries};
use crate::error::{Error, Result};

/// `n_bins + 1` non-decreasing offsets; bin `k` is `offsets[k]..offsets[k + 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinBoundaries {
    offsets: Vec<usize>,
}

impl BinBoundaries {
    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn n_bins(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Index range of bin `k`.
    pub fn bin(&self, k: usize) -> Range<usize> {
        self.offsets[k]..self.offsets[k + 1]
    }

    pub fn bins(&self) -> impl ExactSizeIterator<Item = Range<usize>> + '_ {
        self.offsets.windows(2).map(|w| w[0]..w[1])
    }

    pub(crate) fn from_offsets(offsets: Vec<usize>) -> Self {
        debug_assert!(!offsets.is_empty() && offsets.windows(2).all(|w| w[0] <= w[1]));
        Self { offsets }
    }

    /// Adds `delta` to every offset.
    pub(crate) fn shifted(mut self, delta: usize) -> Self {
        for o in &mut self.offsets {
            *o += delta;
        }
        self
    }

    pub fn into_offsets(self) -> Vec<usize> {
        self.offsets
    }
}

/// Worker count used when the caller does not pick one.
pub fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

pub fn equal_count_boundaries(len: usize, n_bins: usize) -> Result<BinBoundaries> {
    compute(&Layout::count(len, n_bins)?, 1)
}

pub fn equal_width_boundaries(x: IndexSeries<'_>, n_bins: usize) -> Result<BinBoundaries> {
    with_series!(x.values(), s => compute(&Layout::width(s, n_bins)?, 1))
}

/// Same offsets as the sequential routines, computed by `workers` tasks that
/// each own a contiguous run of `ceil(n_bins / workers)` bins.
pub fn boundaries_parallel(
    x: Option<IndexSeries<'_>>,
    len: usize,
    n_bins: usize,
    workers: usize,
) -> Result<BinBoundaries> {
    if workers == 0 {
        return Err(Error::InvalidWorkerCount);
    }
    match x {
        None => compute(&Layout::count(len, n_bins)?, workers),
        Some(x) => {
            if x.len() != len {
                return Err(Error::LengthMismatch { x: x.len(), y: len });
            }
            with_series!(x.values(), s => compute(&Layout::width(s, n_bins)?, workers))
        }
    }
}

/// Boundaries for an optional x-axis over a series of `len` elements.
pub(crate) fn boundaries(
    x: Option<IndexSeries<'_>>,
    len: usize,
    n_bins: usize,
    parallel: bool,
) -> Result<BinBoundaries> {
    let workers = if parallel { default_workers() } else { 1 };
    boundaries_parallel(x, len, n_bins, workers)
}

enum Layout<'a, X> {
    Count {
        len: usize,
        n_bins: usize,
    },
    Width {
        x: &'a [X],
        n_bins: usize,
        x0: f64,
        span: f64,
    },
}

impl<'a> Layout<'a, u8> {
    fn count(len: usize, n_bins: usize) -> Result<Self> {
        if n_bins == 0 {
            return Err(Error::InvalidBinCount);
        }
        Ok(Layout::Count { len, n_bins })
    }
}

impl<'a, X: Element> Layout<'a, X> {
    fn width(x: &'a [X], n_bins: usize) -> Result<Self> {
        if n_bins == 0 {
            return Err(Error::InvalidBinCount);
        }
        debug_assert!(
            x.windows(2).all(|w| w[0].to_f64() <= w[1].to_f64()),
            "x must be non-decreasing"
        );
        let (x0, span) = match (x.first(), x.last()) {
            (Some(first), Some(last)) => {
                let x0 = first.to_f64();
                (x0, last.to_f64() - x0)
            }
            _ => (0.0, 0.0),
        };
        if !span.is_finite() || span < 0.0 {
            return Err(Error::InvalidIndexSpan);
        }
        Ok(Layout::Width { x, n_bins, x0, span })
    }

    fn len(&self) -> usize {
        match self {
            Layout::Count { len, .. } => *len,
            Layout::Width { x, .. } => x.len(),
        }
    }

    fn n_bins(&self) -> usize {
        match self {
            Layout::Count { n_bins, .. } | Layout::Width { n_bins, .. } => *n_bins,
        }
    }

    /// Start of bin `k` for `0 < k < n_bins`, searched within `lo..len`.
    /// `lo` must not exceed the true offset.
    #[inline]
    fn offset(&self, k: usize, lo: usize) -> usize {
        match *self {
            Layout::Count { len, n_bins } => (k as u128 * len as u128 / n_bins as u128) as usize,
            Layout::Width { x, n_bins, x0, span } => {
                if span == 0.0 {
                    return 0;
                }
                let len = x.len();
                let num = (k as i128 * len as i128 - n_bins as i128) as f64;
                let den = (n_bins as i128 * (len as i128 - 1)) as f64;
                let edge = x0 + span * num / den;
                lo + x[lo..].partition_point(|v| v.to_f64() <= edge)
            }
        }
    }
}

fn compute<X: Element>(layout: &Layout<'_, X>, workers: usize) -> Result<BinBoundaries> {
    let len = layout.len();
    let n_bins = layout.n_bins();
    let mut offsets = vec![0usize; n_bins + 1];
    offsets[n_bins] = len;
    if len == 0 || n_bins == 1 {
        return Ok(BinBoundaries { offsets });
    }

    let inner = &mut offsets[1..n_bins];
    let fill = |first_bin: usize, chunk: &mut [usize]| {
        let mut lo = 0;
        for (j, slot) in chunk.iter_mut().enumerate() {
            lo = layout.offset(first_bin + j, lo);
            *slot = lo;
        }
    };
    let chunk = n_bins.div_ceil(workers).max(1);
    if workers == 1 || inner.len() <= chunk {
        fill(1, inner);
    } else {
        inner
            .par_chunks_mut(chunk)
            .enumerate()
            .for_each(|(c, part)| fill(1 + c * chunk, part));
    }

    // No-op for a non-decreasing axis; keeps bins well-formed otherwise.
    for k in 1..=n_bins {
        offsets[k] = offsets[k].max(offsets[k - 1]);
    }
    Ok(BinBoundaries { offsets })
}
