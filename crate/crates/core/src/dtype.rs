//! Element types and the borrowed series views the library operates on.

use std::fmt;
use std::str::FromStr;

use half::f16;

use crate::error::Error;
use crate::extrema::kernel::{dispatch_lanes, SortKey};
use crate::extrema::ordinal::{ord_transform_i16, OrdTransformUint};
use crate::extrema::VectorLevel;

/// Element-type tag of a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DType {
    F16,
    F32,
    F64,
    I8,
    I16,
    I32,
    I64,
    U8,
    U16,
    U32,
    U64,
}

impl DType {
    pub const ALL: [DType; 11] = [
        DType::F16,
        DType::F32,
        DType::F64,
        DType::I8,
        DType::I16,
        DType::I32,
        DType::I64,
        DType::U8,
        DType::U16,
        DType::U32,
        DType::U64,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DType::F16 => "f16",
            DType::F32 => "f32",
            DType::F64 => "f64",
            DType::I8 => "i8",
            DType::I16 => "i16",
            DType::I32 => "i32",
            DType::I64 => "i64",
            DType::U8 => "u8",
            DType::U16 => "u16",
            DType::U32 => "u32",
            DType::U64 => "u64",
        }
    }

    /// Element width in bytes.
    pub fn size(self) -> usize {
        match self {
            DType::I8 | DType::U8 => 1,
            DType::F16 | DType::I16 | DType::U16 => 2,
            DType::F32 | DType::I32 | DType::U32 => 4,
            DType::F64 | DType::I64 | DType::U64 => 8,
        }
    }

    pub fn is_float(self) -> bool {
        matches!(self, DType::F16 | DType::F32 | DType::F64)
    }
}

impl fmt::Display for DType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DType {
    type Err = Error;

    /// Accepts the short names (`f32`, `u8`) as well as the numpy-style long
    /// names (`float32`, `uint8`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let dtype = match s.trim().to_ascii_lowercase().as_str() {
            "f16" | "float16" | "half" => DType::F16,
            "f32" | "float32" => DType::F32,
            "f64" | "float64" => DType::F64,
            "i8" | "int8" => DType::I8,
            "i16" | "int16" => DType::I16,
            "i32" | "int32" => DType::I32,
            "i64" | "int64" => DType::I64,
            "u8" | "uint8" => DType::U8,
            "u16" | "uint16" => DType::U16,
            "u32" | "uint32" => DType::U32,
            "u64" | "uint64" => DType::U64,
            _ => return Err(Error::UnsupportedDtype(s.to_string())),
        };
        Ok(dtype)
    }
}

mod private {
    pub trait Sealed {}
}

/// A supported element type.
///
/// `Key` is the type the kernels compare: the value itself for signed
/// integers and `f32`/`f64`, the ordinal transform for `f16` and unsigned
/// integers.
pub trait Element: Copy + Send + Sync + 'static + private::Sealed {
    const DTYPE: DType;
    type Key: SortKey;

    fn key(self) -> Self::Key;
    fn to_f64(self) -> f64;
    fn series(data: &[Self]) -> ValueSeries<'_>;
    fn buf(data: Vec<Self>) -> SeriesBuf;

    #[doc(hidden)]
    fn lanes_argminmax(level: VectorLevel, data: &[Self]) -> (usize, usize);
}

macro_rules! impl_element {
    ($t:ty, $variant:ident, $key:ty, |$v:ident| $to_key:expr, |$w:ident| $to_f64:expr) => {
        impl private::Sealed for $t {}

        impl Element for $t {
            const DTYPE: DType = DType::$variant;
            type Key = $key;

            #[inline(always)]
            fn key(self) -> $key {
                let $v = self;
                $to_key
            }

            #[inline(always)]
            fn to_f64(self) -> f64 {
                let $w = self;
                $to_f64
            }

            fn series(data: &[$t]) -> ValueSeries<'_> {
                ValueSeries::$variant(data)
            }

            fn buf(data: Vec<$t>) -> SeriesBuf {
                SeriesBuf::$variant(data)
            }

            fn lanes_argminmax(level: VectorLevel, data: &[$t]) -> (usize, usize) {
                const W: usize = std::mem::size_of::<$t>();
                dispatch_lanes::<$t, { 16 / W }>(level, data)
            }
        }
    };
}

impl_element!(f16, F16, i16, |v| ord_transform_i16(v.to_bits() as i16), |v| v.to_f64());
impl_element!(f32, F32, f32, |v| v, |v| v as f64);
impl_element!(f64, F64, f64, |v| v, |v| v);
impl_element!(i8, I8, i8, |v| v, |v| v as f64);
impl_element!(i16, I16, i16, |v| v, |v| v as f64);
impl_element!(i32, I32, i32, |v| v, |v| v as f64);
impl_element!(i64, I64, i64, |v| v, |v| v as f64);
impl_element!(u8, U8, i8, |v| v.ord_transform(), |v| v as f64);
impl_element!(u16, U16, i16, |v| v.ord_transform(), |v| v as f64);
impl_element!(u32, U32, i32, |v| v.ord_transform(), |v| v as f64);
impl_element!(u64, U64, i64, |v| v.ord_transform(), |v| v as f64);

/// A borrowed, contiguous, read-only series of values.
#[derive(Debug, Clone, Copy)]
pub enum ValueSeries<'a> {
    F16(&'a [f16]),
    F32(&'a [f32]),
    F64(&'a [f64]),
    I8(&'a [i8]),
    I16(&'a [i16]),
    I32(&'a [i32]),
    I64(&'a [i64]),
    U8(&'a [u8]),
    U16(&'a [u16]),
    U32(&'a [u32]),
    U64(&'a [u64]),
}

/// Runs `$body` with `$s` bound to the typed slice inside a [`ValueSeries`].
macro_rules! with_series {
    ($series:expr, $s:ident => $body:expr) => {
        match $series {
            $crate::dtype::ValueSeries::F16($s) => $body,
            $crate::dtype::ValueSeries::F32($s) => $body,
            $crate::dtype::ValueSeries::F64($s) => $body,
            $crate::dtype::ValueSeries::I8($s) => $body,
            $crate::dtype::ValueSeries::I16($s) => $body,
            $crate::dtype::ValueSeries::I32($s) => $body,
            $crate::dtype::ValueSeries::I64($s) => $body,
            $crate::dtype::ValueSeries::U8($s) => $body,
            $crate::dtype::ValueSeries::U16($s) => $body,
            $crate::dtype::ValueSeries::U32($s) => $body,
            $crate::dtype::ValueSeries::U64($s) => $body,
        }
    };
}
pub(crate) use with_series;

impl<'a> ValueSeries<'a> {
    pub fn dtype(&self) -> DType {
        with_series!(self, s => element_dtype(*s))
    }

    pub fn len(&self) -> usize {
        with_series!(self, s => s.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Sub-view over `range`; panics when out of bounds, like slice indexing.
    pub fn slice(&self, range: std::ops::Range<usize>) -> ValueSeries<'a> {
        with_series!(*self, s => Element::series(&s[range]))
    }

    /// Value at `i` widened to `f64`.
    pub fn get_f64(&self, i: usize) -> f64 {
        with_series!(self, s => s[i].to_f64())
    }
}

fn element_dtype<E: Element>(_: &[E]) -> DType {
    E::DTYPE
}

impl<'a, E: Element> From<&'a [E]> for ValueSeries<'a> {
    fn from(data: &'a [E]) -> Self {
        E::series(data)
    }
}

impl<'a, E: Element> From<&'a Vec<E>> for ValueSeries<'a> {
    fn from(data: &'a Vec<E>) -> Self {
        E::series(data)
    }
}

/// The optional x-axis of a series: a non-decreasing sequence of any
/// supported numeric type. Datetimes are passed as 64-bit integer ticks.
#[derive(Debug, Clone, Copy)]
pub struct IndexSeries<'a>(ValueSeries<'a>);

impl<'a> IndexSeries<'a> {
    pub fn new(values: ValueSeries<'a>) -> Self {
        Self(values)
    }

    /// Datetime axis given as ticks since an arbitrary epoch.
    pub fn from_ticks(ticks: &'a [i64]) -> Self {
        Self(ValueSeries::I64(ticks))
    }

    pub fn values(&self) -> ValueSeries<'a> {
        self.0
    }

    pub fn dtype(&self) -> DType {
        self.0.dtype()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> IndexSeries<'a> {
        Self(self.0.slice(range))
    }

    pub fn get_f64(&self, i: usize) -> f64 {
        self.0.get_f64(i)
    }
}

impl<'a, E: Element> From<&'a [E]> for IndexSeries<'a> {
    fn from(data: &'a [E]) -> Self {
        Self(E::series(data))
    }
}

impl<'a, E: Element> From<&'a Vec<E>> for IndexSeries<'a> {
    fn from(data: &'a Vec<E>) -> Self {
        Self(E::series(data))
    }
}

/// An owned series, mainly for generated data and bindings.
#[derive(Debug, Clone, PartialEq)]
pub enum SeriesBuf {
    F16(Vec<f16>),
    F32(Vec<f32>),
    F64(Vec<f64>),
    I8(Vec<i8>),
    I16(Vec<i16>),
    I32(Vec<i32>),
    I64(Vec<i64>),
    U8(Vec<u8>),
    U16(Vec<u16>),
    U32(Vec<u32>),
    U64(Vec<u64>),
}

impl SeriesBuf {
    pub fn view(&self) -> ValueSeries<'_> {
        match self {
            SeriesBuf::F16(v) => ValueSeries::F16(v),
            SeriesBuf::F32(v) => ValueSeries::F32(v),
            SeriesBuf::F64(v) => ValueSeries::F64(v),
            SeriesBuf::I8(v) => ValueSeries::I8(v),
            SeriesBuf::I16(v) => ValueSeries::I16(v),
            SeriesBuf::I32(v) => ValueSeries::I32(v),
            SeriesBuf::I64(v) => ValueSeries::I64(v),
            SeriesBuf::U8(v) => ValueSeries::U8(v),
            SeriesBuf::U16(v) => ValueSeries::U16(v),
            SeriesBuf::U32(v) => ValueSeries::U32(v),
            SeriesBuf::U64(v) => ValueSeries::U64(v),
        }
    }

    pub fn dtype(&self) -> DType {
        self.view().dtype()
    }

    pub fn len(&self) -> usize {
        self.view().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Converts `f64` samples into a buffer of `dtype`, with `as`-cast
    /// semantics for integers.
    pub fn from_f64(dtype: DType, values: &[f64]) -> SeriesBuf {
        fn cast<E: Element>(values: &[f64], f: impl Fn(f64) -> E) -> SeriesBuf {
            E::buf(values.iter().map(|&v| f(v)).collect())
        }
        match dtype {
            DType::F16 => cast(values, f16::from_f64),
            DType::F32 => cast(values, |v| v as f32),
            DType::F64 => cast(values, |v| v),
            DType::I8 => cast(values, |v| v as i8),
            DType::I16 => cast(values, |v| v as i16),
            DType::I32 => cast(values, |v| v as i32),
            DType::I64 => cast(values, |v| v as i64),
            DType::U8 => cast(values, |v| v as u8),
            DType::U16 => cast(values, |v| v as u16),
            DType::U32 => cast(values, |v| v as u32),
            DType::U64 => cast(values, |v| v as u64),
        }
    }
}

impl<E: Element> From<Vec<E>> for SeriesBuf {
    fn from(data: Vec<E>) -> Self {
        E::buf(data)
    }
}
