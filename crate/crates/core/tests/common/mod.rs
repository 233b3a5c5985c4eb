//! Test support: seeded data generation and plain-loop reference
//! implementations that share no code with the library.

#![allow(dead_code)]

use plotdown::{f16, DType, SeriesBuf};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Runs `$body` with `$v` bound to the typed vector inside a `SeriesBuf`.
#[allow(unused_macros)]
macro_rules! with_buf {
    ($buf:expr, $v:ident => $body:expr) => {
        match $buf {
            plotdown::SeriesBuf::F16($v) => $body,
            plotdown::SeriesBuf::F32($v) => $body,
            plotdown::SeriesBuf::F64($v) => $body,
            plotdown::SeriesBuf::I8($v) => $body,
            plotdown::SeriesBuf::I16($v) => $body,
            plotdown::SeriesBuf::I32($v) => $body,
            plotdown::SeriesBuf::I64($v) => $body,
            plotdown::SeriesBuf::U8($v) => $body,
            plotdown::SeriesBuf::U16($v) => $body,
            plotdown::SeriesBuf::U32($v) => $body,
            plotdown::SeriesBuf::U64($v) => $body,
        }
    };
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random values over the full integer range or a mix of signs for floats.
/// With `dups`, values come from a tiny alphabet so extrema repeat.
pub fn random_series(dtype: DType, n: usize, seed: u64, dups: bool) -> SeriesBuf {
    let mut r = rng(seed ^ (dtype as u64) << 48);
    macro_rules! ints {
        ($t:ty) => {{
            let v: Vec<$t> = (0..n)
                .map(|_| if dups { (r.random_range(0..4u8) as $t) } else { r.random::<$t>() })
                .collect();
            v.into()
        }};
    }
    match dtype {
        DType::F16 => {
            let v: Vec<f16> = (0..n)
                .map(|_| {
                    if dups {
                        f16::from_f32(r.random_range(0..4) as f32 - 1.5)
                    } else {
                        f16::from_f32(r.random_range(-1000.0f32..1000.0))
                    }
                })
                .collect();
            v.into()
        }
        DType::F32 => {
            let v: Vec<f32> = (0..n)
                .map(|_| if dups { r.random_range(0..4) as f32 } else { r.random_range(-1e6f32..1e6) })
                .collect();
            v.into()
        }
        DType::F64 => {
            let v: Vec<f64> = (0..n)
                .map(|_| if dups { r.random_range(0..4) as f64 } else { r.random_range(-1e9f64..1e9) })
                .collect();
            v.into()
        }
        DType::I8 => ints!(i8),
        DType::I16 => ints!(i16),
        DType::I32 => ints!(i32),
        DType::I64 => ints!(i64),
        DType::U8 => ints!(u8),
        DType::U16 => ints!(u16),
        DType::U32 => ints!(u32),
        DType::U64 => ints!(u64),
    }
}

// ---------------------------------------------------------------------------
// Reference binning: membership per point rather than offsets per bin.

/// Bin of point `i` among `len` points split into `n` equal-count bins:
/// the largest k with floor(k * len / n) <= i, i.e. ceil((i + 1) n / len) - 1.
pub fn count_bin(i: usize, len: usize, n: usize) -> usize {
    let num = (i as u128 + 1) * n as u128;
    (num.div_ceil(len as u128) - 1) as usize
}

/// Bin of every point of `x` for `n` equal-width bins, by linear scan over
/// the edges.
pub fn width_bins(x: &[f64], n: usize) -> Vec<usize> {
    let len = x.len();
    if len == 0 {
        return vec![];
    }
    let (x0, span) = (x[0], x[len - 1] - x[0]);
    x.iter()
        .map(|&xi| {
            if span == 0.0 {
                return n - 1;
            }
            let mut bin = 0;
            for k in 1..n {
                let num = (k as i128 * len as i128 - n as i128) as f64;
                let den = (n as i128 * (len as i128 - 1)) as f64;
                if xi > x0 + span * num / den {
                    bin = k;
                }
            }
            bin
        })
        .collect()
}

/// Groups positions `0..len` into `n` bins.
pub fn groups(x: Option<&[f64]>, len: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); n];
    match x {
        None => (0..len).for_each(|i| out[count_bin(i, len, n)].push(i)),
        Some(x) => {
            for (i, b) in width_bins(x, n).into_iter().enumerate() {
                out[b].push(i);
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Reference downsamplers over native values `y` (compared with PartialOrd)
// and their `f64` widening `yf` (for LTTB areas).

fn first_min<T: PartialOrd + Copy>(y: &[T], idx: &[usize]) -> usize {
    let mut best = idx[0];
    for &i in idx {
        if y[i] < y[best] {
            best = i;
        }
    }
    best
}

fn first_max<T: PartialOrd + Copy>(y: &[T], idx: &[usize]) -> usize {
    let mut best = idx[0];
    for &i in idx {
        if y[i] > y[best] {
            best = i;
        }
    }
    best
}

fn sorted_unique(mut v: Vec<usize>) -> Vec<usize> {
    v.sort();
    v.dedup();
    v
}

/// First index of the minimum and of the maximum.
pub fn ref_argminmax<T: PartialOrd + Copy>(y: &[T]) -> (usize, usize) {
    let all: Vec<usize> = (0..y.len()).collect();
    (first_min(y, &all), first_max(y, &all))
}

/// Widens every value to `f64`.
pub fn widen<E: plotdown::Element>(y: &[E]) -> Vec<f64> {
    y.iter().map(|v| v.to_f64()).collect()
}

/// A sorted random x-axis. With `gaps`, a few steps are huge so that some
/// equal-width bins stay empty.
pub fn random_axis(n: usize, seed: u64, gaps: bool) -> Vec<f64> {
    let mut r = rng(seed.wrapping_add(0x5eed));
    let mut x = Vec::with_capacity(n);
    let mut t = r.random_range(-1000.0..1000.0f64).round();
    for _ in 0..n {
        x.push(t);
        let step = if gaps && r.random_range(0..50) == 0 {
            r.random_range(100..5000) as f64
        } else {
            r.random_range(0..4) as f64
        };
        t += step;
    }
    x
}

pub fn ref_every_nth(len: usize, n_out: usize) -> Vec<u64> {
    if len <= n_out {
        return (0..len as u64).collect();
    }
    let stride = (len + n_out - 1) / n_out;
    let mut out = vec![];
    let mut i = 0;
    while i < len {
        out.push(i as u64);
        i += stride;
    }
    out
}

pub fn ref_minmax<T: PartialOrd + Copy>(x: Option<&[f64]>, y: &[T], n_out: usize) -> Vec<u64> {
    if y.len() <= n_out {
        return (0..y.len() as u64).collect();
    }
    let mut out = vec![];
    for g in groups(x, y.len(), n_out / 2) {
        if g.is_empty() {
            continue;
        }
        out.extend(sorted_unique(vec![first_min(y, &g), first_max(y, &g)]));
    }
    out.into_iter().map(|i| i as u64).collect()
}

pub fn ref_m4<T: PartialOrd + Copy>(x: Option<&[f64]>, y: &[T], n_out: usize) -> Vec<u64> {
    if y.len() <= n_out {
        return (0..y.len() as u64).collect();
    }
    let mut out = vec![];
    for g in groups(x, y.len(), n_out / 4) {
        if g.is_empty() {
            continue;
        }
        let picks = vec![g[0], first_min(y, &g), first_max(y, &g), *g.last().unwrap()];
        out.extend(sorted_unique(picks));
    }
    out.into_iter().map(|i| i as u64).collect()
}

/// The bucket walk over explicit groups of original indices.
pub fn ref_lttb_groups(xs: &[f64], ys: &[f64], buckets: &[Vec<usize>]) -> Vec<u64> {
    let last = ys.len() - 1;
    let mut out = vec![0u64];
    let mut a = 0usize;
    for (k, bucket) in buckets.iter().enumerate() {
        if bucket.is_empty() {
            continue;
        }
        let (cx, cy) = match buckets[k + 1..].iter().find(|b| !b.is_empty()) {
            Some(next) => {
                let mut sx = 0.0;
                let mut sy = 0.0;
                for &i in next {
                    sx += xs[i];
                    sy += ys[i];
                }
                (sx / next.len() as f64, sy / next.len() as f64)
            }
            None => (xs[last], ys[last]),
        };
        let mut best = bucket[0];
        let mut best_area = -1.0;
        for &b in bucket {
            let area =
                0.5 * ((xs[a] - cx) * (ys[b] - ys[a]) - (xs[a] - xs[b]) * (cy - ys[a])).abs();
            if area > best_area {
                best_area = area;
                best = b;
            }
        }
        out.push(best as u64);
        a = best;
    }
    out.push(last as u64);
    out
}

/// Interior groups (indices 1..len-1) as original indices.
fn interior_groups(x: Option<&[f64]>, len: usize, n: usize) -> Vec<Vec<usize>> {
    let inner_x = x.map(|x| &x[1..len - 1]);
    groups(inner_x, len - 2, n)
        .into_iter()
        .map(|g| g.into_iter().map(|i| i + 1).collect())
        .collect()
}

fn coords(x: Option<&[f64]>, len: usize) -> Vec<f64> {
    match x {
        Some(x) => x.to_vec(),
        None => (0..len).map(|i| i as f64).collect(),
    }
}

pub fn ref_lttb(x: Option<&[f64]>, ys: &[f64], n_out: usize) -> Vec<u64> {
    let len = ys.len();
    if len <= n_out {
        return (0..len as u64).collect();
    }
    ref_lttb_groups(&coords(x, len), ys, &interior_groups(x, len, n_out - 2))
}

pub fn ref_minmaxlttb<T: PartialOrd + Copy>(
    x: Option<&[f64]>,
    y: &[T],
    ys: &[f64],
    n_out: usize,
    ratio: usize,
) -> Vec<u64> {
    let len = y.len();
    if len <= n_out * ratio {
        return ref_lttb(x, ys, n_out);
    }
    let per = (ratio + 1) / 2;
    let subs = interior_groups(x, len, (n_out - 2) * per);
    let mut buckets = vec![Vec::new(); n_out - 2];
    for (j, g) in subs.iter().enumerate() {
        if g.is_empty() {
            continue;
        }
        buckets[j / per].extend(sorted_unique(vec![first_min(y, g), first_max(y, g)]));
    }
    ref_lttb_groups(&coords(x, len), ys, &buckets)
}
