use super::lttb::{interior_boundaries, lttb, lttb_core, with_x};
use super::minmax::minmax_picks;
use super::{check_lengths, DownsampleConfig, SelectedIndices};
use crate::binning::BinBoundaries;
use crate::dtype::{with_series, Element, IndexSeries, ValueSeries};
use crate::error::{Error, Result};

/// LTTB over a MinMax preselection.
///
/// The interior is split into `(n_out - 2) * ceil(ratio / 2)` sub-bins; each
/// contributes its argmin and argmax. Every LTTB bucket is made of
/// `ceil(ratio / 2)` consecutive sub-bins, and the bucket walk only
/// considers those candidates. Series of at most `n_out * ratio` points go
/// straight to [`lttb`].
pub fn minmaxlttb(
    x: Option<IndexSeries<'_>>,
    y: ValueSeries<'_>,
    cfg: &DownsampleConfig,
) -> Result<SelectedIndices> {
    if cfg.n_out < 3 {
        return Err(Error::NOutTooSmall);
    }
    if cfg.minmax_ratio == 0 {
        return Err(Error::InvalidRatio);
    }
    check_lengths(x, y)?;
    if y.is_empty() {
        return Err(Error::EmptySeries);
    }
    let len = y.len();
    if len <= cfg.n_out.saturating_mul(cfg.minmax_ratio) {
        return lttb(x, y, cfg);
    }
    let n_buckets = cfg.n_out - 2;
    let per_bucket = cfg.minmax_ratio.div_ceil(2);
    let sub_bins = interior_boundaries(x, len, n_buckets * per_bucket, cfg.parallel)?;
    Ok(with_series!(y, s => {
        let (candidates, buckets) = preselect(s, &sub_bins, per_bucket, cfg.parallel);
        with_x!(x, fx => lttb_core(s, fx, &buckets, Some(&candidates)))
    }))
}

/// Min/max candidates of every sub-bin, plus bucket boundaries over the
/// candidate list grouping `per_bucket` sub-bins each.
fn preselect<Y: Element>(
    y: &[Y],
    sub_bins: &BinBoundaries,
    per_bucket: usize,
    parallel: bool,
) -> (Vec<usize>, BinBoundaries) {
    let picks = minmax_picks(y, sub_bins, parallel);
    let mut candidates = Vec::with_capacity(picks.len() * 2);
    let mut offsets = Vec::with_capacity(picks.len() / per_bucket + 1);
    for (j, p) in picks.iter().enumerate() {
        if j % per_bucket == 0 {
            offsets.push(candidates.len());
        }
        candidates.extend_from_slice(p.as_slice());
    }
    offsets.push(candidates.len());
    (candidates, BinBoundaries::from_offsets(offsets))
}
