use std::ops::Range;

use super::{check_lengths, collect_picks, flatten_picks, DownsampleConfig, Picks, SelectedIndices};
use crate::binning::boundaries;
use crate::dtype::{with_series, Element, IndexSeries, ValueSeries};
use crate::error::{Error, Result};
use crate::extrema::argminmax_slice;

/// First, minimum, maximum and last point of each of `n_out / 4` bins.
pub fn m4(
    x: Option<IndexSeries<'_>>,
    y: ValueSeries<'_>,
    cfg: &DownsampleConfig,
) -> Result<SelectedIndices> {
    if cfg.n_out < 4 {
        return Err(Error::InvalidNOut);
    }
    if cfg.n_out % 4 != 0 {
        return Err(Error::NOutNotMultiple(4));
    }
    check_lengths(x, y)?;
    if y.is_empty() {
        return Err(Error::EmptySeries);
    }
    if y.len() <= cfg.n_out {
        return Ok(SelectedIndices::identity(y.len()));
    }
    let bounds = boundaries(x, y.len(), cfg.n_out / 4, cfg.parallel)?;
    Ok(with_series!(y, s => {
        flatten_picks(&collect_picks(&bounds, cfg.parallel, |r| bin_m4(s, r)))
    }))
}

#[inline]
fn bin_m4<Y: Element>(y: &[Y], range: Range<usize>) -> Picks {
    if range.is_empty() {
        return Picks::EMPTY;
    }
    let (first, last) = (range.start, range.end - 1);
    let r = argminmax_slice(&y[range]).expect("non-empty bin");
    Picks::from_unsorted([first, first + r.argmin, first + r.argmax, last])
}
