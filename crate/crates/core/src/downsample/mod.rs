//! The downsampling algorithms and their common entry point.
//!
//! Every algorithm returns strictly ascending indices into `y`. Series with
//! at most `n_out` points are returned whole. Bins that are empty (gaps in
//! `x`) contribute nothing, and an index picked twice within a bin (say the
//! first point is also the minimum) is emitted once, so the output can be
//! shorter than `n_out`.

mod every_nth;
mod lttb;
mod m4;
mod minmax;
mod minmaxlttb;

use std::fmt;
use std::ops::{Deref, Range};
use std::str::FromStr;

pub use every_nth::every_nth;
pub use lttb::lttb;
pub use m4::m4;
pub use minmax::minmax;
pub use minmaxlttb::minmaxlttb;

use crate::binning::BinBoundaries;
use crate::dtype::{IndexSeries, ValueSeries};
use crate::error::{Error, Result};

/// Default number of preselected points per LTTB bucket in MinMaxLTTB.
pub const DEFAULT_MINMAX_RATIO: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    EveryNth,
    MinMax,
    M4,
    Lttb,
    MinMaxLttb,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::EveryNth,
        Algorithm::MinMax,
        Algorithm::M4,
        Algorithm::Lttb,
        Algorithm::MinMaxLttb,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::EveryNth => "everynth",
            Algorithm::MinMax => "minmax",
            Algorithm::M4 => "m4",
            Algorithm::Lttb => "lttb",
            Algorithm::MinMaxLttb => "minmaxlttb",
        }
    }

    /// Whether the `parallel` flag changes how the algorithm runs.
    pub fn supports_parallel(self) -> bool {
        matches!(self, Algorithm::MinMax | Algorithm::M4 | Algorithm::MinMaxLttb)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let name: String = s
            .chars()
            .filter(|c| !matches!(c, '_' | '-'))
            .collect::<String>()
            .to_ascii_lowercase();
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == name)
            .ok_or_else(|| Error::UnknownAlgorithm(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DownsampleConfig {
    pub n_out: usize,
    /// Process bins on the rayon pool. Output is identical either way.
    pub parallel: bool,
    /// MinMaxLTTB only: candidates preselected per LTTB bucket.
    pub minmax_ratio: usize,
}

impl DownsampleConfig {
    pub fn new(n_out: usize) -> Self {
        Self {
            n_out,
            parallel: false,
            minmax_ratio: DEFAULT_MINMAX_RATIO,
        }
    }

    pub fn parallel(mut self, parallel: bool) -> Self {
        self.parallel = parallel;
        self
    }

    pub fn minmax_ratio(mut self, ratio: usize) -> Self {
        self.minmax_ratio = ratio;
        self
    }
}

/// Ascending, unique indices of the selected points.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SelectedIndices(Vec<u64>);

impl SelectedIndices {
    pub fn into_vec(self) -> Vec<u64> {
        self.0
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub(crate) fn identity(len: usize) -> Self {
        Self((0..len as u64).collect())
    }
}

impl Deref for SelectedIndices {
    type Target = [u64];

    fn deref(&self) -> &[u64] {
        &self.0
    }
}

impl From<Vec<u64>> for SelectedIndices {
    fn from(v: Vec<u64>) -> Self {
        Self(v)
    }
}

impl PartialEq<[u64]> for SelectedIndices {
    fn eq(&self, other: &[u64]) -> bool {
        self.0 == other
    }
}

impl<const N: usize> PartialEq<[u64; N]> for SelectedIndices {
    fn eq(&self, other: &[u64; N]) -> bool {
        self.0 == other
    }
}

/// Runs `algorithm` on `y` (and `x`, when given).
///
/// `x` must have the length of `y` and be non-decreasing; it is ignored by
/// EveryNth. LTTB always runs sequentially.
pub fn downsample(
    algorithm: Algorithm,
    x: Option<IndexSeries<'_>>,
    y: ValueSeries<'_>,
    cfg: &DownsampleConfig,
) -> Result<SelectedIndices> {
    check_lengths(x, y)?;
    match algorithm {
        Algorithm::EveryNth => {
            if y.is_empty() {
                return Err(Error::EmptySeries);
            }
            every_nth(y.len(), cfg.n_out)
        }
        Algorithm::MinMax => minmax(x, y, cfg),
        Algorithm::M4 => m4(x, y, cfg),
        Algorithm::Lttb => lttb(x, y, cfg),
        Algorithm::MinMaxLttb => minmaxlttb(x, y, cfg),
    }
}

pub(crate) fn check_lengths(x: Option<IndexSeries<'_>>, y: ValueSeries<'_>) -> Result<()> {
    match x {
        Some(x) if x.len() != y.len() => Err(Error::LengthMismatch {
            x: x.len(),
            y: y.len(),
        }),
        _ => Ok(()),
    }
}

/// Up to four indices picked within one bin, ascending and unique.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Picks {
    idx: [usize; 4],
    n: u8,
}

impl Picks {
    pub(crate) const EMPTY: Picks = Picks { idx: [0; 4], n: 0 };

    /// Sorts and de-duplicates `idx`.
    pub(crate) fn from_unsorted<const N: usize>(mut idx: [usize; N]) -> Self {
        idx.sort_unstable();
        let mut out = Self::EMPTY;
        for (j, &i) in idx.iter().enumerate() {
            if j == 0 || i != idx[j - 1] {
                out.idx[out.n as usize] = i;
                out.n += 1;
            }
        }
        out
    }

    pub(crate) fn as_slice(&self) -> &[usize] {
        &self.idx[..self.n as usize]
    }
}

/// Applies `pick` to every bin and returns the picks in bin order.
pub(crate) fn collect_picks<F>(bounds: &BinBoundaries, parallel: bool, pick: F) -> Vec<Picks>
where
    F: Fn(Range<usize>) -> Picks + Sync + Send,
{
    use rayon::prelude::*;
    if parallel {
        (0..bounds.n_bins())
            .into_par_iter()
            .with_min_len(16)
            .map(|k| pick(bounds.bin(k)))
            .collect()
    } else {
        bounds.bins().map(pick).collect()
    }
}

pub(crate) fn flatten_picks(picks: &[Picks]) -> SelectedIndices {
    let total: usize = picks.iter().map(|p| p.n as usize).sum();
    let mut out = Vec::with_capacity(total);
    for p in picks {
        out.extend(p.as_slice().iter().map(|&i| i as u64));
    }
    SelectedIndices(out)
}
