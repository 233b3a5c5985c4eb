//! Scalar and lane-parallel argmin/argmax kernels.
//!
//! The lane kernel keeps four accumulators of `L` lanes each: the lowest
//! keys seen per lane, the chunk in which each was seen, and the same pair
//! for the highest keys. Every chunk is a compare followed by a select, so
//! the inner loop has no data-dependent branches. The chunk counters have the
//! same width as the keys, so they are only valid for `MAX + 1` chunks; an
//! outer loop reduces the lanes after each such block and folds the block
//! result into 64-bit running extrema.

use super::features::{detect_features, VectorLevel};
use crate::dtype::Element;

/// Signed lane type that holds the per-lane chunk indices.
pub trait LaneIndex: Copy + Send + Sync + 'static {
    /// Largest representable index.
    const MAX_INDEX: usize;

    fn from_usize(v: usize) -> Self;
    fn to_usize(self) -> usize;
    fn add(self, other: Self) -> Self;
}

macro_rules! impl_lane_index {
    ($($t:ty),*) => {$(
        impl LaneIndex for $t {
            const MAX_INDEX: usize = <$t>::MAX as usize;

            #[inline(always)]
            fn from_usize(v: usize) -> Self {
                v as $t
            }

            #[inline(always)]
            fn to_usize(self) -> usize {
                self as usize
            }

            #[inline(always)]
            fn add(self, other: Self) -> Self {
                self.wrapping_add(other)
            }
        }
    )*};
}

impl_lane_index!(i8, i16, i32, i64);

/// A comparison key together with the index lane of the same bit width.
pub trait SortKey: Copy + PartialOrd + Send + Sync + 'static {
    type Lane: LaneIndex;
}

impl SortKey for i8 {
    type Lane = i8;
}
impl SortKey for i16 {
    type Lane = i16;
}
impl SortKey for i32 {
    type Lane = i32;
}
impl SortKey for i64 {
    type Lane = i64;
}
impl SortKey for f32 {
    type Lane = i32;
}
impl SortKey for f64 {
    type Lane = i64;
}

/// Running extrema over a prefix of the data.
#[derive(Clone, Copy)]
pub(crate) struct Running<K> {
    pub(crate) min: K,
    pub(crate) argmin: usize,
    pub(crate) max: K,
    pub(crate) argmax: usize,
}

impl<K: SortKey> Running<K> {
    #[inline(always)]
    pub(crate) fn start(key: K, index: usize) -> Self {
        Self {
            min: key,
            argmin: index,
            max: key,
            argmax: index,
        }
    }

    /// Folds in a candidate that comes strictly after everything seen so far.
    #[inline(always)]
    pub(crate) fn update(&mut self, min: K, argmin: usize, max: K, argmax: usize) {
        if min < self.min {
            self.min = min;
            self.argmin = argmin;
        }
        if max > self.max {
            self.max = max;
            self.argmax = argmax;
        }
    }
}

/// Single left-to-right pass with strict comparisons.
pub(crate) fn argminmax_scalar<E: Element>(data: &[E]) -> (usize, usize) {
    debug_assert!(!data.is_empty());
    let mut run = Running::start(data[0].key(), 0);
    for (i, v) in data.iter().enumerate().skip(1) {
        let k = v.key();
        run.update(k, i, k, i);
    }
    (run.argmin, run.argmax)
}

#[inline(always)]
fn load<E: Element, const L: usize>(chunk: &[E]) -> [E::Key; L] {
    let chunk: &[E; L] = chunk.try_into().expect("chunk of lane width");
    chunk.map(|v| v.key())
}

/// Reduces one block of at most `MAX + 1` chunks to block-relative
/// `(min, argmin, max, argmax)`.
#[inline(always)]
fn reduce_block<E: Element, const L: usize>(block: &[E]) -> Running<E::Key> {
    type Lane<E> = <<E as Element>::Key as SortKey>::Lane;

    let mut chunks = block.chunks_exact(L);
    let first = load::<E, L>(chunks.next().expect("non-empty block"));
    let mut low = first;
    let mut high = first;
    let mut chunk = Lane::<E>::from_usize(0);
    let mut low_chunk = [chunk; L];
    let mut high_chunk = [chunk; L];
    let one = Lane::<E>::from_usize(1);

    for values in chunks {
        chunk = chunk.add(one);
        let values: &[E; L] = values.try_into().expect("chunk of lane width");
        for j in 0..L {
            let v = values[j].key();
            let lt = v < low[j];
            low[j] = if lt { v } else { low[j] };
            low_chunk[j] = if lt { chunk } else { low_chunk[j] };
            let gt = v > high[j];
            high[j] = if gt { v } else { high[j] };
            high_chunk[j] = if gt { chunk } else { high_chunk[j] };
        }
    }

    // Horizontal step: equal keys resolve to the lowest index.
    let mut run = Running::start(block[0].key(), 0);
    for j in 0..L {
        let i = low_chunk[j].to_usize() * L + j;
        if low[j] < run.min || (low[j] == run.min && i < run.argmin) {
            run.min = low[j];
            run.argmin = i;
        }
        let i = high_chunk[j].to_usize() * L + j;
        if high[j] > run.max || (high[j] == run.max && i < run.argmax) {
            run.max = high[j];
            run.argmax = i;
        }
    }
    run
}

/// Portable lane kernel; the optimizer may or may not vectorize it.
#[inline(always)]
pub(crate) fn argminmax_lanes<E: Element, const L: usize>(data: &[E]) -> (usize, usize) {
    debug_assert!(!data.is_empty());
    let n = data.len();
    let vector_end = n - n % L;
    let block_len = (<E::Key as SortKey>::Lane::MAX_INDEX + 1).saturating_mul(L);

    let mut run: Option<Running<E::Key>> = None;
    let mut start = 0;
    while start < vector_end {
        let end = start.saturating_add(block_len).min(vector_end);
        let b = reduce_block::<E, L>(&data[start..end]);
        match run.as_mut() {
            None => {
                run = Some(Running {
                    argmin: start + b.argmin,
                    argmax: start + b.argmax,
                    ..b
                })
            }
            Some(r) => r.update(b.min, start + b.argmin, b.max, start + b.argmax),
        }
        start = end;
    }

    let mut run = run.unwrap_or_else(|| Running::start(data[0].key(), 0));
    for (i, v) in data.iter().enumerate().skip(vector_end) {
        let k = v.key();
        run.update(k, i, k, i);
    }
    (run.argmin, run.argmax)
}

#[cfg(target_arch = "x86_64")]
pub(crate) use super::x86::X86Element as ArchElement;

#[cfg(not(target_arch = "x86_64"))]
pub(crate) trait ArchElement {}

#[cfg(not(target_arch = "x86_64"))]
impl<T> ArchElement for T {}

/// Runs the kernel for `level`: intrinsics on x86_64, otherwise the
/// portable build with `L128` lanes. Levels the CPU lacks (and `Scalar`)
/// also run the portable build.
pub(crate) fn dispatch_lanes<E: Element + ArchElement, const L128: usize>(
    level: VectorLevel,
    data: &[E],
) -> (usize, usize) {
    if !detect_features().contains(level) {
        return argminmax_lanes::<E, L128>(data);
    }
    match level {
        // SAFETY: the level was detected on this CPU above.
        #[cfg(target_arch = "x86_64")]
        VectorLevel::Sse41 => unsafe { E::sse41(data) },
        #[cfg(target_arch = "x86_64")]
        VectorLevel::Avx2 => unsafe { E::avx2(data) },
        #[cfg(target_arch = "x86_64")]
        VectorLevel::Avx512 => unsafe { E::avx512(data) },
        _ => argminmax_lanes::<E, L128>(data),
    }
}
