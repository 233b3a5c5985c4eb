use super::{check_lengths, DownsampleConfig, SelectedIndices};
use crate::binning::{boundaries, BinBoundaries};
use crate::dtype::{Element, IndexSeries, ValueSeries};
use crate::error::{Error, Result};

/// Binds `$f` to an `Fn(usize) -> f64` giving the x-coordinate of a point:
/// the index itself without an axis, the axis value widened to `f64` with one.
macro_rules! with_x {
    ($x:expr, $f:ident => $body:expr) => {
        match $x {
            None => {
                let $f = |i: usize| i as f64;
                $body
            }
            Some(xs) => $crate::dtype::with_series!(xs.values(), s => {
                let $f = |i: usize| $crate::dtype::Element::to_f64(s[i]);
                $body
            }),
        }
    };
}
pub(crate) use with_x;

/// Largest-Triangle-Three-Buckets.
///
/// Keeps the first and last point and splits the interior into `n_out - 2`
/// buckets. Walking the buckets left to right, each one contributes the point
/// forming the largest triangle with the previously selected point and the
/// centroid of the next non-empty bucket (the last point, past the final
/// bucket). Ties keep the earliest point. All arithmetic is `f64`.
pub fn lttb(
    x: Option<IndexSeries<'_>>,
    y: ValueSeries<'_>,
    cfg: &DownsampleConfig,
) -> Result<SelectedIndices> {
    if cfg.n_out < 3 {
        return Err(Error::NOutTooSmall);
    }
    check_lengths(x, y)?;
    if y.is_empty() {
        return Err(Error::EmptySeries);
    }
    let len = y.len();
    if len <= cfg.n_out {
        return Ok(SelectedIndices::identity(len));
    }
    let buckets = interior_boundaries(x, len, cfg.n_out - 2, false)?;
    Ok(crate::dtype::with_series!(y, s => with_x!(x, fx => lttb_core(s, fx, &buckets, None))))
}

/// Bins over the interior `1..len - 1`, as absolute offsets.
pub(crate) fn interior_boundaries(
    x: Option<IndexSeries<'_>>,
    len: usize,
    n_bins: usize,
    parallel: bool,
) -> Result<BinBoundaries> {
    debug_assert!(len >= 2);
    let inner = x.map(|x| x.slice(1..len - 1));
    Ok(boundaries(inner, len - 2, n_bins, parallel)?.shifted(1))
}

/// Runs the bucket walk. `buckets` ranges over positions; a position is an
/// index into `y` directly, or into `candidates` when given.
pub(crate) fn lttb_core<Y: Element, X: Fn(usize) -> f64>(
    y: &[Y],
    fx: X,
    buckets: &BinBoundaries,
    candidates: Option<&[usize]>,
) -> SelectedIndices {
    let index = |p: usize| candidates.map_or(p, |c| c[p]);
    let last = y.len() - 1;
    let n_buckets = buckets.n_bins();

    // The point each bucket aims at: the centroid of the next non-empty
    // bucket, or the last point.
    let mut targets = vec![(fx(last), y[last].to_f64()); n_buckets];
    let mut next = targets.last().copied().unwrap_or((0.0, 0.0));
    for k in (0..n_buckets).rev() {
        targets[k] = next;
        let r = buckets.bin(k);
        if !r.is_empty() {
            let count = r.len() as f64;
            let (mut sx, mut sy) = (0.0, 0.0);
            for p in r {
                let i = index(p);
                sx += fx(i);
                sy += y[i].to_f64();
            }
            next = (sx / count, sy / count);
        }
    }

    let mut out = Vec::with_capacity(n_buckets + 2);
    out.push(0u64);
    let (mut ax, mut ay) = (fx(0), y[0].to_f64());
    for (k, &(cx, cy)) in targets.iter().enumerate() {
        let r = buckets.bin(k);
        if r.is_empty() {
            continue;
        }
        let mut best = index(r.start);
        let mut best_area = -1.0;
        for p in r {
            let i = index(p);
            let (bx, by) = (fx(i), y[i].to_f64());
            let area = 0.5 * ((ax - cx) * (by - ay) - (ax - bx) * (cy - ay)).abs();
            if area > best_area {
                best_area = area;
                best = i;
            }
        }
        out.push(best as u64);
        ax = fx(best);
        ay = y[best].to_f64();
    }
    out.push(last as u64);
    out.into()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(x: Option<IndexSeries<'_>>, y: &[f64], n_out: usize) -> Result<SelectedIndices> {
        lttb(x, y.into(), &DownsampleConfig::new(n_out))
    }

    #[test]
    fn spike() {
        assert_eq!(run(None, &[0.0, 0.0, 10.0, 0.0, 0.0], 3).unwrap(), [0, 2, 4]);
    }

    #[test]
    fn identity_and_errors() {
        let y = [1.0, 3.0, 2.0, 5.0];
        assert_eq!(run(None, &y, 4).unwrap(), [0, 1, 2, 3]);
        assert_eq!(run(None, &y, 2), Err(Error::NOutTooSmall));
        assert_eq!(Error::NOutTooSmall.to_string(), "n_out too small for LTTB");
        assert_eq!(run(None, &[], 3), Err(Error::EmptySeries));
    }

    #[test]
    fn hand_computed_buckets() {
        // Interior {1, 2} | {3, 4}; first bucket aims at centroid (3.5, 1.0).
        // Point 1: |(0-3.5)(4-0) - (0-1)(1-0)| / 2 = 6.5
        // Point 2: |(0-3.5)(-1-0) - (0-2)(1-0)| / 2 = 2.75
        // Second bucket from point 1 aims at point 5 (5, 0):
        // Point 3: |(1-5)(2-4) - (1-3)(0-4)| / 2 = 0
        // Point 4: |(1-5)(0-4) - (1-4)(0-4)| / 2 = 2
        let y = [0.0, 4.0, -1.0, 2.0, 0.0, 0.0];
        assert_eq!(run(None, &y, 4).unwrap(), [0, 1, 4, 5]);
    }

    #[test]
    fn x_axis_gap_skips_empty_bucket() {
        let x = [0.0, 1.0, 2.0, 3.0, 4.0, 50.0, 100.0];
        let y = [0.0, 1.0, 0.0, 3.0, 0.0, 2.0, 0.0];
        // Interior x = 1..=50 split into 3 widths; the middle bucket is empty.
        let out = run(Some((&x[..]).into()), &y, 5).unwrap();
        assert_eq!(out.len(), 4);
        assert_eq!(out[0], 0);
        assert_eq!(out[3], 6);
    }
}
