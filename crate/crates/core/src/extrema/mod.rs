//! Single-pass argmin/argmax.
//!
//! [`argminmax`] picks the widest kernel the CPU supports (detected once per
//! process). All kernels return the first occurrence of the minimum and of
//! the maximum, so every path returns bit-identical indices. `f16` values are
//! compared through their `i16` ordinal key and unsigned integers through
//! their sign-flipped signed key; floats are expected to be NaN-free (NaN
//! inputs give unspecified but in-bounds indices).

mod features;
pub(crate) mod kernel;
pub mod ordinal;
#[cfg(target_arch = "x86_64")]
mod x86;

pub use features::{detect_features, FeatureSet, VectorLevel};
pub use ordinal::{ord_transform_i16, ord_transform_uint, OrdTransformUint};

use crate::dtype::{with_series, Element, ValueSeries};
use crate::error::{Error, Result};

/// Indices of the minimum and maximum of a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExtremaResult {
    pub argmin: usize,
    pub argmax: usize,
}

impl From<(usize, usize)> for ExtremaResult {
    fn from((argmin, argmax): (usize, usize)) -> Self {
        Self { argmin, argmax }
    }
}

fn non_empty<E>(data: &[E]) -> Result<()> {
    if data.is_empty() {
        Err(Error::EmptySeries)
    } else {
        Ok(())
    }
}

/// Reference kernel: one scalar pass.
pub fn argminmax_scalar(series: ValueSeries<'_>) -> Result<ExtremaResult> {
    with_series!(series, s => scalar_slice(s))
}

/// Lane kernel at the widest detected vector level. On CPUs without a vector
/// unit the portable 128-bit build runs.
pub fn argminmax_vector(series: ValueSeries<'_>) -> Result<ExtremaResult> {
    let level = detect_features()
        .best_vector()
        .unwrap_or(VectorLevel::Scalar);
    with_series!(series, s => lanes_slice(level, s))
}

/// Lane kernel compiled for `level`. Levels missing from
/// [`detect_features`] run the portable build instead.
pub fn argminmax_at(level: VectorLevel, series: ValueSeries<'_>) -> Result<ExtremaResult> {
    with_series!(series, s => lanes_slice(level, s))
}

/// Dispatching entry point.
pub fn argminmax(series: ValueSeries<'_>) -> Result<ExtremaResult> {
    with_series!(series, s => argminmax_slice(s))
}

/// Typed form of [`argminmax`].
#[inline]
pub fn argminmax_slice<E: Element>(data: &[E]) -> Result<ExtremaResult> {
    non_empty(data)?;
    Ok(match detect_features().best() {
        VectorLevel::Scalar => kernel::argminmax_scalar(data),
        level => E::lanes_argminmax(level, data),
    }
    .into())
}

/// Typed form of [`argminmax_scalar`].
pub fn scalar_slice<E: Element>(data: &[E]) -> Result<ExtremaResult> {
    non_empty(data)?;
    Ok(kernel::argminmax_scalar(data).into())
}

/// Typed form of [`argminmax_at`].
pub fn lanes_slice<E: Element>(level: VectorLevel, data: &[E]) -> Result<ExtremaResult> {
    non_empty(data)?;
    Ok(E::lanes_argminmax(level, data).into())
}
