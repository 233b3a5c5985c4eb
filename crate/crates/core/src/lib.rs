//! Time series downsampling for visualization.
//!
//! The library selects a visually representative subset of a series and
//! returns the indices of the kept points. All algorithms work on borrowed
//! views ([`ValueSeries`], [`IndexSeries`]) of any of the eleven supported
//! element types and never copy the input.
//!
//! ```
//! use plotdown::{downsample, Algorithm, DownsampleConfig};
//!
//! let y: Vec<f32> = (0..10_000).map(|i| (i as f32 * 0.01).sin()).collect();
//! let idx = downsample(Algorithm::MinMaxLttb, None, (&y).into(), &DownsampleConfig::new(100))?;
//! assert_eq!(idx.len(), 100);
//! # Ok::<(), plotdown::Error>(())
//! ```

pub mod binning;
pub mod downsample;
pub mod dtype;
mod error;
pub mod extrema;

pub use binning::{
    boundaries_parallel, default_workers, equal_count_boundaries, equal_width_boundaries,
    BinBoundaries,
};
pub use downsample::{
    downsample, every_nth, lttb, m4, minmax, minmaxlttb, Algorithm, DownsampleConfig,
    SelectedIndices, DEFAULT_MINMAX_RATIO,
};
pub use dtype::{DType, Element, IndexSeries, SeriesBuf, ValueSeries};
pub use error::{Error, Result};
pub use extrema::{
    argminmax, argminmax_at, argminmax_scalar, argminmax_slice, argminmax_vector,
    detect_features, ord_transform_i16, ord_transform_uint, ExtremaResult, FeatureSet,
    VectorLevel,
};

pub use half::f16;
