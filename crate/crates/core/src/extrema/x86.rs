//! Intrinsics kernels for x86_64 at 128, 256 and 512 bits.
//!
//! Same scheme as the portable lane kernel, written against explicit
//! registers so the inner loop is one load, two compares and four blends per
//! chunk regardless of how the optimizer treats the generic code.

use std::arch::x86_64::*;

use super::kernel::{argminmax_lanes, LaneIndex, Running, SortKey};
use crate::dtype::Element;

type Lane<V> = <<V as Simd>::Key as SortKey>::Lane;

/// A register of keys together with its register of chunk counters.
pub(crate) trait Simd: Copy {
    type Key: SortKey;
    type Idx: Copy;
    type Mask: Copy;
    const LANES: usize;

    unsafe fn lt(a: Self, b: Self) -> Self::Mask;
    unsafe fn gt(a: Self, b: Self) -> Self::Mask;
    /// `t` where `m` is set, `f` elsewhere.
    unsafe fn select(m: Self::Mask, t: Self, f: Self) -> Self;
    unsafe fn select_idx(m: Self::Mask, t: Self::Idx, f: Self::Idx) -> Self::Idx;
    unsafe fn splat_idx(v: Lane<Self>) -> Self::Idx;
    unsafe fn add_idx(a: Self::Idx, b: Self::Idx) -> Self::Idx;
    unsafe fn store(self, out: *mut Self::Key);
    unsafe fn store_idx(v: Self::Idx, out: *mut Lane<Self>);
}

/// Loads `LANES` elements of `E` as keys.
pub(crate) trait Load<E: Element>: Simd<Key = E::Key> {
    unsafe fn load(p: *const E) -> Self;
}

macro_rules! simd {
    (
        $feat:literal, $name:ident($reg:ty), key: $key:ty, lane: $lane:ty, lanes: $lanes:literal,
        idx: $idx:ty, mask: $mask:ty,
        lt($a:ident, $b:ident) => $lt:expr,
        gt => $gt:expr,
        select($m:ident, $t:ident, $f:ident) => $sel:expr,
        select_idx => $sel_idx:expr,
        splat($v:ident) => $splat:expr,
        add => $add:expr,
        store($x:ident, $out:ident) => $store:expr,
        store_idx => $store_idx:expr $(,)?
    ) => {
        #[derive(Clone, Copy)]
        pub(crate) struct $name($reg);

        impl Simd for $name {
            type Key = $key;
            type Idx = $idx;
            type Mask = $mask;
            const LANES: usize = $lanes;

            #[inline]
            #[target_feature(enable = $feat)]
            unsafe fn lt(a: Self, b: Self) -> $mask {
                let ($a, $b) = (a.0, b.0);
                $lt
            }

            #[inline]
            #[target_feature(enable = $feat)]
            unsafe fn gt(a: Self, b: Self) -> $mask {
                let ($a, $b) = (a.0, b.0);
                $gt
            }

            #[inline]
            #[target_feature(enable = $feat)]
            unsafe fn select(m: $mask, t: Self, f: Self) -> Self {
                let ($m, $t, $f) = (m, t.0, f.0);
                Self($sel)
            }

            #[inline]
            #[target_feature(enable = $feat)]
            unsafe fn select_idx(m: $mask, t: $idx, f: $idx) -> $idx {
                let ($m, $t, $f) = (m, t, f);
                $sel_idx
            }

            #[inline]
            #[target_feature(enable = $feat)]
            unsafe fn splat_idx($v: $lane) -> $idx {
                $splat
            }

            #[inline]
            #[target_feature(enable = $feat)]
            unsafe fn add_idx(a: $idx, b: $idx) -> $idx {
                let ($a, $b) = (a, b);
                $add
            }

            #[inline]
            #[target_feature(enable = $feat)]
            unsafe fn store(self, out: *mut $key) {
                let ($x, $out) = (self.0, out);
                $store
            }

            #[inline]
            #[target_feature(enable = $feat)]
            unsafe fn store_idx(v: $idx, out: *mut $lane) {
                let ($x, $out) = (v, out);
                $store_idx
            }
        }
    };
}

macro_rules! load {
    ($feat:literal, $name:ident, $e:ty, |$p:ident| $body:expr) => {
        impl Load<$e> for $name {
            #[inline]
            #[target_feature(enable = $feat)]
            unsafe fn load($p: *const $e) -> Self {
                Self($body)
            }
        }
    };
}

// 128-bit integer registers.
macro_rules! sse_int {
    ($name:ident, $key:ty, $lanes:literal, $cmpgt:ident, $set1:ident, $add:ident) => {
        simd! {
            "sse4.1", $name(__m128i), key: $key, lane: $key, lanes: $lanes,
            idx: __m128i, mask: __m128i,
            lt(a, b) => $cmpgt(b, a),
            gt => $cmpgt(a, b),
            select(m, t, f) => _mm_blendv_epi8(f, t, m),
            select_idx => _mm_blendv_epi8(f, t, m),
            splat(v) => $set1(v),
            add => $add(a, b),
            store(x, out) => _mm_storeu_si128(out.cast(), x),
            store_idx => _mm_storeu_si128(out.cast(), x),
        }
    };
}

sse_int!(SseI8, i8, 16, _mm_cmpgt_epi8, _mm_set1_epi8, _mm_add_epi8);
sse_int!(SseI16, i16, 8, _mm_cmpgt_epi16, _mm_set1_epi16, _mm_add_epi16);
sse_int!(SseI32, i32, 4, _mm_cmpgt_epi32, _mm_set1_epi32, _mm_add_epi32);

simd! {
    "sse4.1", SseF32(__m128), key: f32, lane: i32, lanes: 4, idx: __m128i, mask: __m128,
    lt(a, b) => _mm_cmplt_ps(a, b),
    gt => _mm_cmpgt_ps(a, b),
    select(m, t, f) => _mm_blendv_ps(f, t, m),
    select_idx => _mm_blendv_epi8(f, t, _mm_castps_si128(m)),
    splat(v) => _mm_set1_epi32(v),
    add => _mm_add_epi32(a, b),
    store(x, out) => _mm_storeu_ps(out, x),
    store_idx => _mm_storeu_si128(out.cast(), x),
}

simd! {
    "sse4.1", SseF64(__m128d), key: f64, lane: i64, lanes: 2, idx: __m128i, mask: __m128d,
    lt(a, b) => _mm_cmplt_pd(a, b),
    gt => _mm_cmpgt_pd(a, b),
    select(m, t, f) => _mm_blendv_pd(f, t, m),
    select_idx => _mm_blendv_epi8(f, t, _mm_castpd_si128(m)),
    splat(v) => _mm_set1_epi64x(v),
    add => _mm_add_epi64(a, b),
    store(x, out) => _mm_storeu_pd(out, x),
    store_idx => _mm_storeu_si128(out.cast(), x),
}

load!("sse4.1", SseI8, i8, |p| _mm_loadu_si128(p.cast()));
load!("sse4.1", SseI16, i16, |p| _mm_loadu_si128(p.cast()));
load!("sse4.1", SseI32, i32, |p| _mm_loadu_si128(p.cast()));
load!("sse4.1", SseI8, u8, |p| _mm_xor_si128(_mm_loadu_si128(p.cast()), _mm_set1_epi8(i8::MIN)));
load!("sse4.1", SseI16, u16, |p| _mm_xor_si128(_mm_loadu_si128(p.cast()), _mm_set1_epi16(i16::MIN)));
load!("sse4.1", SseI32, u32, |p| _mm_xor_si128(_mm_loadu_si128(p.cast()), _mm_set1_epi32(i32::MIN)));
load!("sse4.1", SseF32, f32, |p| _mm_loadu_ps(p));
load!("sse4.1", SseF64, f64, |p| _mm_loadu_pd(p));
load!("sse4.1", SseI16, half::f16, |p| {
    let v = _mm_loadu_si128(p.cast());
    _mm_xor_si128(_mm_and_si128(_mm_srai_epi16::<15>(v), _mm_set1_epi16(0x7FFF)), v)
});

// 256-bit registers.
macro_rules! avx2_int {
    ($name:ident, $key:ty, $lanes:literal, $cmpgt:ident, $set1:ident, $add:ident) => {
        simd! {
            "avx2", $name(__m256i), key: $key, lane: $key, lanes: $lanes,
            idx: __m256i, mask: __m256i,
            lt(a, b) => $cmpgt(b, a),
            gt => $cmpgt(a, b),
            select(m, t, f) => _mm256_blendv_epi8(f, t, m),
            select_idx => _mm256_blendv_epi8(f, t, m),
            splat(v) => $set1(v),
            add => $add(a, b),
            store(x, out) => _mm256_storeu_si256(out.cast(), x),
            store_idx => _mm256_storeu_si256(out.cast(), x),
        }
    };
}

avx2_int!(Avx2I8, i8, 32, _mm256_cmpgt_epi8, _mm256_set1_epi8, _mm256_add_epi8);
avx2_int!(Avx2I16, i16, 16, _mm256_cmpgt_epi16, _mm256_set1_epi16, _mm256_add_epi16);
avx2_int!(Avx2I32, i32, 8, _mm256_cmpgt_epi32, _mm256_set1_epi32, _mm256_add_epi32);
avx2_int!(Avx2I64, i64, 4, _mm256_cmpgt_epi64, _mm256_set1_epi64x, _mm256_add_epi64);

simd! {
    "avx2", Avx2F32(__m256), key: f32, lane: i32, lanes: 8, idx: __m256i, mask: __m256,
    lt(a, b) => _mm256_cmp_ps::<_CMP_LT_OQ>(a, b),
    gt => _mm256_cmp_ps::<_CMP_GT_OQ>(a, b),
    select(m, t, f) => _mm256_blendv_ps(f, t, m),
    select_idx => _mm256_blendv_epi8(f, t, _mm256_castps_si256(m)),
    splat(v) => _mm256_set1_epi32(v),
    add => _mm256_add_epi32(a, b),
    store(x, out) => _mm256_storeu_ps(out, x),
    store_idx => _mm256_storeu_si256(out.cast(), x),
}

simd! {
    "avx2", Avx2F64(__m256d), key: f64, lane: i64, lanes: 4, idx: __m256i, mask: __m256d,
    lt(a, b) => _mm256_cmp_pd::<_CMP_LT_OQ>(a, b),
    gt => _mm256_cmp_pd::<_CMP_GT_OQ>(a, b),
    select(m, t, f) => _mm256_blendv_pd(f, t, m),
    select_idx => _mm256_blendv_epi8(f, t, _mm256_castpd_si256(m)),
    splat(v) => _mm256_set1_epi64x(v),
    add => _mm256_add_epi64(a, b),
    store(x, out) => _mm256_storeu_pd(out, x),
    store_idx => _mm256_storeu_si256(out.cast(), x),
}

load!("avx2", Avx2I8, i8, |p| _mm256_loadu_si256(p.cast()));
load!("avx2", Avx2I16, i16, |p| _mm256_loadu_si256(p.cast()));
load!("avx2", Avx2I32, i32, |p| _mm256_loadu_si256(p.cast()));
load!("avx2", Avx2I64, i64, |p| _mm256_loadu_si256(p.cast()));
load!("avx2", Avx2I8, u8, |p| _mm256_xor_si256(_mm256_loadu_si256(p.cast()), _mm256_set1_epi8(i8::MIN)));
load!("avx2", Avx2I16, u16, |p| _mm256_xor_si256(_mm256_loadu_si256(p.cast()), _mm256_set1_epi16(i16::MIN)));
load!("avx2", Avx2I32, u32, |p| _mm256_xor_si256(_mm256_loadu_si256(p.cast()), _mm256_set1_epi32(i32::MIN)));
load!("avx2", Avx2I64, u64, |p| _mm256_xor_si256(_mm256_loadu_si256(p.cast()), _mm256_set1_epi64x(i64::MIN)));
load!("avx2", Avx2F32, f32, |p| _mm256_loadu_ps(p));
load!("avx2", Avx2F64, f64, |p| _mm256_loadu_pd(p));
load!("avx2", Avx2I16, half::f16, |p| {
    let v = _mm256_loadu_si256(p.cast());
    _mm256_xor_si256(_mm256_and_si256(_mm256_srai_epi16::<15>(v), _mm256_set1_epi16(0x7FFF)), v)
});

// 512-bit registers with mask registers.
macro_rules! avx512_int {
    ($name:ident, $key:ty, $lanes:literal, $mask:ty, $lt:ident, $gt:ident, $blend:ident, $set1:ident, $add:ident) => {
        simd! {
            "avx512f,avx512bw", $name(__m512i), key: $key, lane: $key, lanes: $lanes,
            idx: __m512i, mask: $mask,
            lt(a, b) => $lt(a, b),
            gt => $gt(a, b),
            select(m, t, f) => $blend(m, f, t),
            select_idx => $blend(m, f, t),
            splat(v) => $set1(v),
            add => $add(a, b),
            store(x, out) => _mm512_storeu_si512(out.cast(), x),
            store_idx => _mm512_storeu_si512(out.cast(), x),
        }
    };
}

avx512_int!(Avx512I8, i8, 64, __mmask64, _mm512_cmplt_epi8_mask, _mm512_cmpgt_epi8_mask,
    _mm512_mask_blend_epi8, _mm512_set1_epi8, _mm512_add_epi8);
avx512_int!(Avx512I16, i16, 32, __mmask32, _mm512_cmplt_epi16_mask, _mm512_cmpgt_epi16_mask,
    _mm512_mask_blend_epi16, _mm512_set1_epi16, _mm512_add_epi16);
avx512_int!(Avx512I32, i32, 16, __mmask16, _mm512_cmplt_epi32_mask, _mm512_cmpgt_epi32_mask,
    _mm512_mask_blend_epi32, _mm512_set1_epi32, _mm512_add_epi32);
avx512_int!(Avx512I64, i64, 8, __mmask8, _mm512_cmplt_epi64_mask, _mm512_cmpgt_epi64_mask,
    _mm512_mask_blend_epi64, _mm512_set1_epi64, _mm512_add_epi64);

simd! {
    "avx512f,avx512bw", Avx512F32(__m512), key: f32, lane: i32, lanes: 16,
    idx: __m512i, mask: __mmask16,
    lt(a, b) => _mm512_cmp_ps_mask::<_CMP_LT_OQ>(a, b),
    gt => _mm512_cmp_ps_mask::<_CMP_GT_OQ>(a, b),
    select(m, t, f) => _mm512_mask_blend_ps(m, f, t),
    select_idx => _mm512_mask_blend_epi32(m, f, t),
    splat(v) => _mm512_set1_epi32(v),
    add => _mm512_add_epi32(a, b),
    store(x, out) => _mm512_storeu_ps(out, x),
    store_idx => _mm512_storeu_si512(out.cast(), x),
}

simd! {
    "avx512f,avx512bw", Avx512F64(__m512d), key: f64, lane: i64, lanes: 8,
    idx: __m512i, mask: __mmask8,
    lt(a, b) => _mm512_cmp_pd_mask::<_CMP_LT_OQ>(a, b),
    gt => _mm512_cmp_pd_mask::<_CMP_GT_OQ>(a, b),
    select(m, t, f) => _mm512_mask_blend_pd(m, f, t),
    select_idx => _mm512_mask_blend_epi64(m, f, t),
    splat(v) => _mm512_set1_epi64(v),
    add => _mm512_add_epi64(a, b),
    store(x, out) => _mm512_storeu_pd(out, x),
    store_idx => _mm512_storeu_si512(out.cast(), x),
}

load!("avx512f,avx512bw", Avx512I8, i8, |p| _mm512_loadu_si512(p.cast()));
load!("avx512f,avx512bw", Avx512I16, i16, |p| _mm512_loadu_si512(p.cast()));
load!("avx512f,avx512bw", Avx512I32, i32, |p| _mm512_loadu_si512(p.cast()));
load!("avx512f,avx512bw", Avx512I64, i64, |p| _mm512_loadu_si512(p.cast()));
load!("avx512f,avx512bw", Avx512I8, u8, |p| {
    _mm512_xor_si512(_mm512_loadu_si512(p.cast()), _mm512_set1_epi8(i8::MIN))
});
load!("avx512f,avx512bw", Avx512I16, u16, |p| {
    _mm512_xor_si512(_mm512_loadu_si512(p.cast()), _mm512_set1_epi16(i16::MIN))
});
load!("avx512f,avx512bw", Avx512I32, u32, |p| {
    _mm512_xor_si512(_mm512_loadu_si512(p.cast()), _mm512_set1_epi32(i32::MIN))
});
load!("avx512f,avx512bw", Avx512I64, u64, |p| {
    _mm512_xor_si512(_mm512_loadu_si512(p.cast()), _mm512_set1_epi64(i64::MIN))
});
load!("avx512f,avx512bw", Avx512F32, f32, |p| _mm512_loadu_ps(p));
load!("avx512f,avx512bw", Avx512F64, f64, |p| _mm512_loadu_pd(p));
load!("avx512f,avx512bw", Avx512I16, half::f16, |p| {
    let v = _mm512_loadu_si512(p.cast());
    _mm512_xor_si512(_mm512_and_si512(_mm512_srai_epi16::<15>(v), _mm512_set1_epi16(0x7FFF)), v)
});

const MAX_LANES: usize = 64;
const PREFETCH_BYTES: usize = 1024;

/// Reduces `chunks` consecutive registers starting at `p` to block-relative
/// extrema.
#[inline(always)]
unsafe fn reduce_block<E: Element, V: Load<E>>(p: *const E, chunks: usize) -> Running<E::Key> {
    let l = V::LANES;
    let mut low = V::load(p);
    let mut high = low;
    let one = V::splat_idx(Lane::<V>::from_usize(1));
    let mut chunk = V::splat_idx(Lane::<V>::from_usize(0));
    let mut low_chunk = chunk;
    let mut high_chunk = chunk;
    for c in 1..chunks {
        chunk = V::add_idx(chunk, one);
        _mm_prefetch::<_MM_HINT_T0>(p.wrapping_add(c * l + PREFETCH_BYTES / std::mem::size_of::<E>()).cast());
        let v = V::load(p.add(c * l));
        let m = V::lt(v, low);
        low = V::select(m, v, low);
        low_chunk = V::select_idx(m, chunk, low_chunk);
        let m = V::gt(v, high);
        high = V::select(m, v, high);
        high_chunk = V::select_idx(m, chunk, high_chunk);
    }

    let k0 = (*p).key();
    let zero = Lane::<V>::from_usize(0);
    let (mut lo, mut hi) = ([k0; MAX_LANES], [k0; MAX_LANES]);
    let (mut lo_c, mut hi_c) = ([zero; MAX_LANES], [zero; MAX_LANES]);
    low.store(lo.as_mut_ptr());
    high.store(hi.as_mut_ptr());
    V::store_idx(low_chunk, lo_c.as_mut_ptr());
    V::store_idx(high_chunk, hi_c.as_mut_ptr());

    // Equal keys resolve to the lowest element index.
    let mut run = Running::start(k0, 0);
    for j in 0..l {
        let i = lo_c[j].to_usize() * l + j;
        if lo[j] < run.min || (lo[j] == run.min && i < run.argmin) {
            run.min = lo[j];
            run.argmin = i;
        }
        let i = hi_c[j].to_usize() * l + j;
        if hi[j] > run.max || (hi[j] == run.max && i < run.argmax) {
            run.max = hi[j];
            run.argmax = i;
        }
    }
    run
}

#[inline(always)]
unsafe fn argminmax_simd<E: Element, V: Load<E>>(data: &[E]) -> (usize, usize) {
    debug_assert!(!data.is_empty());
    let l = V::LANES;
    debug_assert!(l <= MAX_LANES);
    let n = data.len();
    let vector_end = n - n % l;
    // Chunk counters run from 0 to the lane maximum.
    let block_chunks = Lane::<V>::MAX_INDEX + 1;

    let mut run: Option<Running<E::Key>> = None;
    let mut start = 0;
    while start < vector_end {
        let chunks = ((vector_end - start) / l).min(block_chunks);
        let b = reduce_block::<E, V>(data.as_ptr().add(start), chunks);
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
        start += chunks * l;
    }

    let mut run = run.unwrap_or_else(|| Running::start(data[0].key(), 0));
    for (i, v) in data.iter().enumerate().skip(vector_end) {
        let k = v.key();
        run.update(k, i, k, i);
    }
    (run.argmin, run.argmax)
}

#[target_feature(enable = "sse4.1")]
unsafe fn run_sse41<E: Element, V: Load<E>>(data: &[E]) -> (usize, usize) {
    argminmax_simd::<E, V>(data)
}

#[target_feature(enable = "avx2")]
unsafe fn run_avx2<E: Element, V: Load<E>>(data: &[E]) -> (usize, usize) {
    argminmax_simd::<E, V>(data)
}

#[target_feature(enable = "avx512f,avx512bw")]
unsafe fn run_avx512<E: Element, V: Load<E>>(data: &[E]) -> (usize, usize) {
    argminmax_simd::<E, V>(data)
}

/// Element types with intrinsics kernels. Callers must have detected the
/// matching CPU feature.
pub(crate) trait X86Element: Element {
    unsafe fn sse41(data: &[Self]) -> (usize, usize);
    unsafe fn avx2(data: &[Self]) -> (usize, usize);
    unsafe fn avx512(data: &[Self]) -> (usize, usize);
}

macro_rules! x86_element {
    // 64-bit integer compares need SSE4.2; use the portable build instead.
    ($e:ty, sse: portable, avx2: $avx2:ty, avx512: $avx512:ty) => {
        x86_element!(@impl $e, argminmax_lanes::<$e, 2>, $avx2, $avx512);
    };
    ($e:ty, sse: $sse:ty, avx2: $avx2:ty, avx512: $avx512:ty) => {
        x86_element!(@impl $e, run_sse41::<$e, $sse>, $avx2, $avx512);
    };
    (@impl $e:ty, $sse:expr, $avx2:ty, $avx512:ty) => {
        impl X86Element for $e {
            unsafe fn sse41(data: &[$e]) -> (usize, usize) {
                $sse(data)
            }

            unsafe fn avx2(data: &[$e]) -> (usize, usize) {
                run_avx2::<$e, $avx2>(data)
            }

            unsafe fn avx512(data: &[$e]) -> (usize, usize) {
                run_avx512::<$e, $avx512>(data)
            }
        }
    };
}

x86_element!(half::f16, sse: SseI16, avx2: Avx2I16, avx512: Avx512I16);
x86_element!(f32, sse: SseF32, avx2: Avx2F32, avx512: Avx512F32);
x86_element!(f64, sse: SseF64, avx2: Avx2F64, avx512: Avx512F64);
x86_element!(i8, sse: SseI8, avx2: Avx2I8, avx512: Avx512I8);
x86_element!(i16, sse: SseI16, avx2: Avx2I16, avx512: Avx512I16);
x86_element!(i32, sse: SseI32, avx2: Avx2I32, avx512: Avx512I32);
x86_element!(i64, sse: portable, avx2: Avx2I64, avx512: Avx512I64);
x86_element!(u8, sse: SseI8, avx2: Avx2I8, avx512: Avx512I8);
x86_element!(u16, sse: SseI16, avx2: Avx2I16, avx512: Avx512I16);
x86_element!(u32, sse: SseI32, avx2: Avx2I32, avx512: Avx512I32);
x86_element!(u64, sse: portable, avx2: Avx2I64, avx512: Avx512I64);
