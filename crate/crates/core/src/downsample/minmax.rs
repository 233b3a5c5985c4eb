use std::ops::Range;

use super::{check_lengths, collect_picks, flatten_picks, DownsampleConfig, Picks, SelectedIndices};
use crate::binning::{boundaries, BinBoundaries};
use crate::dtype::{with_series, Element, IndexSeries, ValueSeries};
use crate::error::{Error, Result};
use crate::extrema::argminmax_slice;

/// Minimum and maximum of each of `n_out / 2` bins.
pub fn minmax(
    x: Option<IndexSeries<'_>>,
    y: ValueSeries<'_>,
    cfg: &DownsampleConfig,
) -> Result<SelectedIndices> {
    if cfg.n_out < 2 {
        return Err(Error::InvalidNOut);
    }
    if cfg.n_out % 2 != 0 {
        return Err(Error::NOutNotMultiple(2));
    }
    check_lengths(x, y)?;
    if y.is_empty() {
        return Err(Error::EmptySeries);
    }
    if y.len() <= cfg.n_out {
        return Ok(SelectedIndices::identity(y.len()));
    }
    let bounds = boundaries(x, y.len(), cfg.n_out / 2, cfg.parallel)?;
    Ok(with_series!(y, s => flatten_picks(&minmax_picks(s, &bounds, cfg.parallel))))
}

/// Argmin and argmax of `y[range]`, as absolute indices.
#[inline]
pub(crate) fn bin_minmax<Y: Element>(y: &[Y], range: Range<usize>) -> Picks {
    if range.is_empty() {
        return Picks::EMPTY;
    }
    let start = range.start;
    let r = argminmax_slice(&y[range]).expect("non-empty bin");
    Picks::from_unsorted([start + r.argmin, start + r.argmax])
}

pub(crate) fn minmax_picks<Y: Element>(y: &[Y], bounds: &BinBoundaries, parallel: bool) -> Vec<Picks> {
    collect_picks(bounds, parallel, |r| bin_minmax(y, r))
}
